"""Seeded random sparse and dense tensors.

The generator is SplitMix64, chosen because it is a few lines in any
language, so fixed-seed fixtures can be reproduced elsewhere:

    state  <- state + 0x9E3779B97F4A7C15          (mod 2**64)
    z      <- state
    z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB
    output <- z ^ (z >> 31)

The k-th output (k = 1, 2, ...) depends only on ``seed + k * gamma``, so
blocks of outputs are computed vectorised. A 64-bit output ``z`` becomes
a double ``u = (z >> 11) * 2**-53`` in ``[0, 1)``; data values are
``2u - 1`` and an integer below ``m`` is ``floor(u * m)``.

``random_sparse`` draws coordinates from the stream seeded with ``seed``
and data values from a second stream seeded with ``mix(seed ^ DATA_SALT)``,
so the data never depend on how many coordinate draws were rejected.
"""

from __future__ import annotations

import math

import numpy as np

from ftt.errors import FttError
from ftt.lexsort import INT64_MAX, keys_to_tuples
from ftt.tensor import DenseTensor, SparseTensor

GAMMA = 0x9E3779B97F4A7C15
MUL1 = 0xBF58476D1CE4E5B9
MUL2 = 0x94D049BB133111EB
DATA_SALT = 0xD1B54A32D192ED03
_MASK = (1 << 64) - 1


def mix64(z: int) -> int:
    """The SplitMix64 output function on a Python int."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * MUL1) & _MASK
    z = ((z ^ (z >> 27)) * MUL2) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self, n: int) -> np.ndarray:
        ks = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + ks * np.uint64(GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(MUL1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(MUL2)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + n * GAMMA) & _MASK
        return z

    def uniform(self, n: int) -> np.ndarray:
        """``n`` doubles in ``[0, 1)``."""
        return (self.next_u64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def below(self, n: int, m: int) -> np.ndarray:
        """``n`` integers in ``[0, m)``."""
        return np.minimum(np.floor(self.uniform(n) * m), m - 1).astype(np.int64)


def _data_stream(seed: int) -> SplitMix64:
    return SplitMix64(mix64(int(seed) ^ DATA_SALT))


def _distinct_prefix(gen: SplitMix64, nnz: int, space: int) -> np.ndarray:
    """First ``nnz`` distinct values of the stream ``gen.below(., space)``."""
    chosen = np.zeros(0, dtype=np.int64)
    while chosen.size < nnz:
        need = nnz - chosen.size
        batch = gen.below(need + need // 4 + 16, space)
        stream = np.concatenate([chosen, batch])
        _, first = np.unique(stream, return_index=True)
        chosen = stream[np.sort(first)][:nnz]
    return chosen


def _shuffle_prefix(gen: SplitMix64, nnz: int, space: int) -> np.ndarray:
    """Partial Fisher-Yates: the first ``nnz`` slots of a shuffled ``range(space)``."""
    pool = list(range(space))
    u = gen.uniform(nnz).tolist()
    for i in range(nnz):
        j = min(i + int(u[i] * (space - i)), space - 1)
        pool[i], pool[j] = pool[j], pool[i]
    return np.asarray(pool[:nnz], dtype=np.int64)


def random_sparse(shape, nnz: int, seed: int) -> SparseTensor:
    """Canonical tensor with exactly ``nnz`` distinct coordinates.

    Coordinates are sampled uniformly without replacement by drawing
    row-major keys and rejecting repeats; above half the dense size a
    partial shuffle is used instead. Data are uniform in ``[-1, 1)``.
    """
    shape = tuple(int(s) for s in shape)
    space = math.prod(shape)
    if space > INT64_MAX:
        raise FttError(f"dense size of {shape} overflows int64")
    if not 0 <= nnz <= space:
        raise FttError(f"nnz={nnz} must lie in [0, {space}] for shape {shape}")
    gen = SplitMix64(seed)
    if 2 * nnz > space:
        keys = _shuffle_prefix(gen, nnz, space)
    else:
        keys = _distinct_prefix(gen, nnz, space)
    keys = np.sort(keys)
    data = 2.0 * _data_stream(seed).uniform(nnz) - 1.0
    return SparseTensor(shape, keys_to_tuples(keys, shape), data, canonical=True)


def random_sparse_at(shape, target_sparsity: float, seed: int) -> SparseTensor:
    """``random_sparse`` with ``nnz = max(1, round(p * dense size))``."""
    if not 0.0 < target_sparsity <= 1.0:
        raise FttError("sparsity must lie in (0, 1]")
    space = math.prod(int(s) for s in shape)
    nnz = min(space, max(1, round(target_sparsity * space)))
    return random_sparse(shape, nnz, seed)


def random_dense(shape, seed: int) -> DenseTensor:
    shape = tuple(int(s) for s in shape)
    values = 2.0 * SplitMix64(seed).uniform(math.prod(shape)) - 1.0
    return DenseTensor(shape, values)
