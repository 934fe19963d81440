"""Shared generators for tests (numpy Generator based, independent of ftt.randgen)."""

import math

import numpy as np

from ftt.tensor import SparseTensor


def random_rows(rng, shape, n, unique=True):
    """``n`` random coordinate rows for ``shape`` (distinct when ``unique``)."""
    size = math.prod(shape)
    if unique:
        keys = rng.choice(size, size=min(n, size), replace=False)
    else:
        keys = rng.integers(0, size, size=n)
    return np.stack(np.unravel_index(keys, shape), axis=1).astype(np.int64).reshape(-1, len(shape))


def sorted_unique_rows(rng, shape, n):
    rows = random_rows(rng, shape, n, unique=True)
    # np.lexsort treats its last key as primary
    order = np.lexsort(rows.T[::-1]) if rows.shape[1] else np.arange(rows.shape[0])
    return rows[order]


def raw_sparse(rng, shape, n, unique=False):
    """Non-canonical sparse tensor, possibly with duplicate rows, in random order."""
    rows = random_rows(rng, shape, n, unique=unique)
    data = rng.uniform(-1, 1, size=rows.shape[0])
    return SparseTensor(shape, rows, data, canonical=False)
