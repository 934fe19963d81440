"""Tuple ordering, tuples-to-numbers, and the domain-constrained lexicographic sort.

An index array is sorted one column at a time, left to right. After each
column is sorted the positions where its value changes are added to a
*domains* array (boundaries ``[0, ..., N]``), and the next column is only
sorted inside those ranges. After the last column the rows are in
lexicographic order and the domains delimit runs of identical rows.

Permutations and domains are plain ``int64`` numpy arrays.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ftt.errors import DomainsError, FttError, OrderError

INT64_MAX = np.iinfo(np.int64).max

# blocks at or below this size use insertion sort in the pure-Python path
INSERTION_CUTOFF = 32

LT, EQ, GT = -1, 0, 1


def tuple_cmp(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two equal-length tuples lexicographically.

    Returns ``LT`` (-1), ``EQ`` (0) or ``GT`` (1); the first differing
    position decides.
    """
    if len(a) != len(b):
        raise FttError(f"cannot compare tuples of length {len(a)} and {len(b)}")
    for x, y in zip(a, b):
        if x < y:
            return LT
        if x > y:
            return GT
    return EQ


def _radix_product(radices: Sequence[int]) -> int:
    total = math.prod(int(r) for r in radices)
    if total > INT64_MAX:
        raise FttError(f"product of radices {tuple(radices)} overflows int64")
    return total


def tuple_key(a: Sequence[int], radices: Sequence[int]) -> int:
    """Mixed-radix number of ``a`` with the leftmost entry most significant.

    ``tuple_key((1, 2, 3), (10, 10, 10)) == 123``. Strictly order
    preserving: ``tuple_cmp(a, b) == LT`` iff ``key(a) < key(b)``.
    """
    if len(a) != len(radices):
        raise FttError("tuple and radices differ in length")
    _radix_product(radices)
    key = 0
    for x, r in zip(a, radices):
        x, r = int(x), int(r)
        if not 0 <= x < r:
            raise FttError(f"entry {x} outside radix range [0, {r})")
        key = key * r + x
    return key


def tuple_keys(rows: np.ndarray, radices: Sequence[int]) -> np.ndarray:
    """Vectorised :func:`tuple_key` over the rows of an ``(N, n)`` matrix."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2 or rows.shape[1] != len(radices):
        raise FttError("rows must be an (N, len(radices)) matrix")
    _radix_product(radices)
    keys = np.zeros(rows.shape[0], dtype=np.int64)
    for k, r in enumerate(radices):
        col = rows[:, k]
        if col.size and (col.min() < 0 or col.max() >= r):
            raise FttError(f"column {k} has entries outside radix range [0, {r})")
        keys *= r
        keys += col
    return keys


def keys_to_tuples(keys: np.ndarray, radices: Sequence[int]) -> np.ndarray:
    """Inverse of :func:`tuple_keys`."""
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty((keys.shape[0], len(radices)), dtype=np.int64)
    rest = keys.copy()
    for k in range(len(radices) - 1, -1, -1):
        out[:, k] = rest % radices[k]
        rest //= radices[k]
    return out


def check_domains(domains, n: int) -> np.ndarray:
    domains = np.asarray(domains, dtype=np.int64)
    if domains.ndim != 1 or domains.size == 0:
        raise DomainsError("domains must be a non-empty 1-d array")
    if domains[0] != 0 or domains[-1] != n:
        raise DomainsError(f"domains must start at 0 and end at {n}")
    if n > 0 and np.any(np.diff(domains) <= 0):
        raise DomainsError("domains must be strictly increasing")
    if n == 0 and domains.size != 1:
        raise DomainsError("domains over an empty column must be [0]")
    return domains


def _block_ids(domains: np.ndarray, n: int) -> np.ndarray:
    ids = np.zeros(n, dtype=np.int64)
    if domains.size > 2:
        ids[domains[1:-1]] = 1
    return np.cumsum(ids)


def _insertion_argsort(values: list, lo: int, hi: int, perm: list) -> None:
    for i in range(lo + 1, hi):
        p = perm[i]
        v = values[p]
        j = i - 1
        while j >= lo and values[perm[j]] > v:
            perm[j + 1] = perm[j]
            j -= 1
        perm[j + 1] = p


def _merge_argsort(values: list, lo: int, hi: int, perm: list, buf: list) -> None:
    if hi - lo <= INSERTION_CUTOFF:
        _insertion_argsort(values, lo, hi, perm)
        return
    mid = (lo + hi) // 2
    _merge_argsort(values, lo, mid, perm, buf)
    _merge_argsort(values, mid, hi, perm, buf)
    if values[perm[mid - 1]] <= values[perm[mid]]:
        return
    buf[lo:hi] = perm[lo:hi]
    i, j, k = lo, mid, lo
    while i < mid and j < hi:
        # <= keeps the merge stable
        if values[buf[i]] <= values[buf[j]]:
            perm[k] = buf[i]
            i += 1
        else:
            perm[k] = buf[j]
            j += 1
        k += 1
    perm[k:hi] = buf[i:mid] if i < mid else buf[j:hi]


def constrained_argsort(column, domains, method: str = "numpy") -> np.ndarray:
    """Stable argsort of ``column`` restricted to each ``[domains[n], domains[n+1])``.

    Rows never move across a domain boundary. ``method="hybrid"`` runs a
    pure-Python merge sort per block that drops to insertion sort for
    blocks of ``INSERTION_CUTOFF`` rows or fewer; ``method="numpy"`` does the
    same job in one stable numpy sort keyed on (block, value). Both return
    identical permutations.
    """
    column = np.asarray(column, dtype=np.int64)
    n = column.shape[0]
    domains = check_domains(domains, n)
    if method == "numpy":
        return np.lexsort((column, _block_ids(domains, n))).astype(np.int64)
    if method != "hybrid":
        raise FttError(f"unknown sort method {method!r}")
    values = column.tolist()
    perm = list(range(n))
    buf = [0] * n
    bounds = domains.tolist()
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi - lo > 1:
            _merge_argsort(values, lo, hi, perm, buf)
    return np.asarray(perm, dtype=np.int64)


def domains_from_sorted(column, prior) -> np.ndarray:
    """Refine ``prior`` with every position where ``column`` changes value.

    ``column`` must already be sorted inside each block of ``prior``.
    """
    column = np.asarray(column, dtype=np.int64)
    n = column.shape[0]
    prior = check_domains(prior, n)
    changes = np.flatnonzero(column[1:] != column[:-1]) + 1
    return np.union1d(prior, changes).astype(np.int64)


def lex_argsort(indices, method: str = "numpy") -> tuple[np.ndarray, np.ndarray]:
    """Lexicographic argsort of the rows of ``indices``, column by column.

    Returns ``(perm, domains)``: ``indices[perm]`` is in non-decreasing
    (ssort) order and ``domains`` delimits maximal runs of equal rows. The
    sort is stable, so an already ordered matrix gets the identity.
    """
    indices = np.asarray(indices, dtype=np.int64)
    if indices.ndim != 2:
        raise FttError("indices must be a 2-d matrix")
    n_rows, n_cols = indices.shape
    perm = np.arange(n_rows, dtype=np.int64)
    domains = np.array([0, n_rows] if n_rows else [0], dtype=np.int64)
    for k in range(n_cols):
        # a fully refined domain array means the remaining columns cannot move anything
        if domains.size == n_rows + 1:
            break
        col = indices[perm, k]
        step = constrained_argsort(col, domains, method=method)
        perm = perm[step]
        domains = domains_from_sorted(col[step], domains)
    return perm, domains


def is_ssorted(rows) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    return _adjacent_order(rows, strict=False)


def is_sssorted(rows) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    return _adjacent_order(rows, strict=True)


def _adjacent_order(rows: np.ndarray, strict: bool) -> bool:
    if rows.shape[0] < 2:
        return True
    if rows.shape[1] == 0:
        # every row is the empty tuple
        return not strict
    prev, nxt = rows[:-1], rows[1:]
    diff = nxt != prev
    any_diff = diff.any(axis=1)
    first = np.argmax(diff, axis=1)
    r = np.arange(prev.shape[0])
    increasing = nxt[r, first] > prev[r, first]
    if strict:
        return bool(np.all(any_diff & increasing))
    return bool(np.all(~any_diff | increasing))


def uniques(sorted_indices) -> np.ndarray:
    """Positions of the first occurrence of each distinct row of an ssorted matrix."""
    rows = np.asarray(sorted_indices, dtype=np.int64)
    if rows.ndim != 2:
        raise FttError("indices must be a 2-d matrix")
    if not is_ssorted(rows):
        raise OrderError("rows are not in lexicographic (ssort) order")
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    starts = np.flatnonzero((rows[1:] != rows[:-1]).any(axis=1)) + 1
    return np.concatenate(([0], starts)).astype(np.int64)
