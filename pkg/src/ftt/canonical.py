"""Canonical form: rows sorted lexicographically, duplicate rows summed."""

from __future__ import annotations

import math

import numpy as np

from ftt.lexsort import INT64_MAX, is_ssorted, is_sssorted, lex_argsort, tuple_keys, uniques
from ftt.tensor import SparseTensor


def is_well_ordered(indices) -> bool:
    """True iff every adjacent pair of rows is strictly increasing."""
    return is_sssorted(indices)


def is_partially_ordered(indices) -> bool:
    """True iff every adjacent pair of rows is non-decreasing."""
    return is_ssorted(indices)


def sort_permutation(indices, shape) -> np.ndarray:
    """Stable lexicographic argsort of the index rows.

    When the dense size fits in int64 the rows are mapped to mixed-radix
    keys (order isomorphic) and sorted once; otherwise the column-by-column
    constrained sort is used.
    """
    indices = np.asarray(indices, dtype=np.int64)
    if math.prod(shape) <= INT64_MAX:
        return np.argsort(tuple_keys(indices, shape), kind="stable").astype(np.int64)
    perm, _ = lex_argsort(indices)
    return perm


def canonicalize(t: SparseTensor) -> SparseTensor:
    """Sort rows and sum every run of duplicate rows.

    Runs are summed left to right in (stable) sorted order, which is the
    original input order within a run, so the result matches a ``+=``
    accumulation into a dense array bit for bit. Sums that come out as
    exactly zero are kept.
    """
    if t.canonical:
        return t
    if t.nnz == 0:
        return SparseTensor(t.shape, t.indices, t.data, canonical=True)
    perm = sort_permutation(t.indices, t.shape)
    rows = t.indices[perm]
    data = t.data[perm]
    u = uniques(rows)
    if u.size == rows.shape[0]:
        return SparseTensor(t.shape, rows, data, canonical=True)
    run = np.zeros(rows.shape[0], dtype=np.int64)
    run[u[1:]] = 1
    np.cumsum(run, out=run)
    # bincount accumulates sequentially in input order
    summed = np.bincount(run, weights=data, minlength=u.size)
    return SparseTensor(t.shape, rows[u], summed, canonical=True)
