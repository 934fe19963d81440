"""Sparse (COO) and dense tensor value types.

A ``SparseTensor`` is three arrays: the dense ``shape``, an ``(N, n)``
index array whose row ``I`` is the coordinate tuple of entry ``I``, and a
length-``N`` data vector. Arrays are stored read-only; every operation
returns a new tensor.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ftt.errors import (
    AxisGroupError,
    DataLengthError,
    FttError,
    IndexBoundsError,
    NotCanonicalError,
    PermutationError,
    ShapeError,
)
from ftt.lexsort import keys_to_tuples, tuple_keys


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _check_shape(shape) -> tuple[int, ...]:
    try:
        shape = tuple(int(s) for s in shape)
    except TypeError as exc:
        raise ShapeError(f"shape must be a sequence of integers, got {shape!r}") from exc
    if any(s <= 0 for s in shape):
        raise ShapeError(f"shape entries must be positive, got {shape}")
    return shape


class SparseTensor:
    """COO sparse tensor.

    Construct through :func:`new_sparse` (validating) or one of the
    conversion helpers. ``canonical`` is True only when the rows of
    ``indices`` are known to be strictly lexicographically increasing.
    """

    __slots__ = ("shape", "indices", "data", "canonical")

    def __init__(self, shape, indices, data, canonical=False):
        self.shape = tuple(shape)
        self.indices = _frozen(np.ascontiguousarray(indices, dtype=np.int64))
        self.data = _frozen(np.ascontiguousarray(data, dtype=np.float64))
        self.canonical = bool(canonical)

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def nnz(self) -> int:
        return self.data.shape[0]

    @property
    def dense_size(self) -> int:
        return math.prod(self.shape)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"SparseTensor(shape={self.shape}, nnz={self.nnz}, "
            f"canonical={self.canonical})"
        )


class DenseTensor:
    """Row-major dense tensor; ``values`` is the flat buffer."""

    __slots__ = ("array",)

    def __init__(self, shape, values):
        shape = () if len(shape) == 0 else _check_shape(shape)
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size != math.prod(shape):
            raise DataLengthError(
                f"{values.size} values cannot fill a dense tensor of shape {shape}"
            )
        self.array = _frozen(values.reshape(shape).copy())

    @classmethod
    def from_array(cls, array) -> DenseTensor:
        array = np.asarray(array, dtype=np.float64)
        return cls(array.shape, array)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.array.shape

    @property
    def values(self) -> np.ndarray:
        return self.array.reshape(-1)

    @property
    def ndim(self) -> int:
        return self.array.ndim

    def __eq__(self, other):
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.array, other.array)

    __hash__ = None

    def __repr__(self):
        return f"DenseTensor(shape={self.shape})"


def new_sparse(shape, indices, data) -> SparseTensor:
    """Validate and build a non-canonical sparse tensor.

    Row order is kept as given and duplicate rows are allowed; call
    :func:`ftt.canonical.canonicalize` to sort and merge them.
    """
    shape = () if len(shape) == 0 else _check_shape(shape)
    n = len(shape)
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size == 0 and (idx.ndim < 2 or n == 0):
        # [] or a scalar tensor: one empty tuple per data entry
        idx = np.zeros((0 if n else np.size(data), n), dtype=np.int64)
    if idx.ndim != 2:
        raise ShapeError(f"indices must be an (N, {n}) matrix, got ndim={idx.ndim}")
    if idx.shape[1] != n:
        raise ShapeError(f"indices have {idx.shape[1]} columns but shape has {n} axes")
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 1 or data.shape[0] != idx.shape[0]:
        raise DataLengthError(
            f"data length {data.size} does not match {idx.shape[0]} index rows"
        )
    if idx.shape[0]:
        lo = idx.min(axis=0)
        hi = idx.max(axis=0)
        for k in range(n):
            if lo[k] < 0 or hi[k] >= shape[k]:
                raise IndexBoundsError(
                    f"column {k} has entries outside [0, {shape[k]})"
                )
    return SparseTensor(shape, idx, data, canonical=False)


def sparsity(t: SparseTensor) -> float:
    """Fraction of the dense element count that is stored."""
    if not t.canonical:
        raise NotCanonicalError("sparsity is only defined for canonical tensors")
    return t.nnz / t.dense_size


def to_dense(t: SparseTensor) -> DenseTensor:
    if not t.canonical:
        raise NotCanonicalError("to_dense expects a canonical tensor")
    out = np.zeros(t.dense_size, dtype=np.float64)
    if t.nnz:
        out[tuple_keys(t.indices, t.shape)] = t.data
    return DenseTensor(t.shape, out)


def from_dense(d: DenseTensor, tol: float = 0.0) -> SparseTensor:
    """Keep entries with ``|value| > tol``; row-major enumeration is already sorted."""
    if tol < 0:
        raise FttError("tol must be non-negative")
    flat = d.values
    keys = np.flatnonzero(np.abs(flat) > tol)
    return SparseTensor(
        d.shape, keys_to_tuples(keys, d.shape), flat[keys], canonical=True
    )


def _check_perm(perm, n: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(n)):
        raise PermutationError(f"{perm} is not a permutation of range({n})")
    return perm


def permute_axes(t: SparseTensor, perm: Sequence[int]) -> SparseTensor:
    perm = _check_perm(perm, t.ndim)
    if perm == tuple(range(t.ndim)):
        return t
    return SparseTensor(
        tuple(t.shape[p] for p in perm),
        t.indices[:, list(perm)],
        t.data,
        canonical=False,
    )


def check_groups(groups: Iterable[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    groups = [tuple(int(c) for c in g) for g in groups]
    flat = [c for g in groups for c in g]
    if any(not 0 <= c < n for c in flat):
        raise AxisGroupError(f"axis group column out of range [0, {n})")
    if len(set(flat)) != len(flat):
        raise AxisGroupError("axis groups overlap")
    if len(flat) != n:
        raise AxisGroupError("axis groups do not cover every column")
    return groups


def flatten_groups(t: SparseTensor, groups: Sequence[Sequence[int]]) -> SparseTensor:
    """Linearise each group of columns into one column (row-major within the group).

    The output canonical flag is kept only when the groups list the
    columns in their original order, the one case where row order survives.
    """
    groups = check_groups(groups, t.ndim)
    shape = []
    cols = []
    for g in groups:
        radices = [t.shape[c] for c in g]
        shape.append(math.prod(radices))
        cols.append(tuple_keys(t.indices[:, list(g)], radices))
    order_kept = [c for g in groups for c in g] == list(range(t.ndim))
    indices = np.stack(cols, axis=1) if cols else np.zeros((t.nnz, 0), dtype=np.int64)
    return SparseTensor(shape, indices, t.data, canonical=t.canonical and order_kept)


def flatten_dense_groups(d: DenseTensor, groups: Sequence[Sequence[int]]) -> np.ndarray:
    """Transpose ``d`` so the groups are contiguous, then reshape one axis per group."""
    groups = check_groups(groups, d.ndim)
    order = [c for g in groups for c in g]
    extents = [math.prod(d.shape[c] for c in g) for g in groups]
    return np.transpose(d.array, order).reshape(extents)
