"""Direct intersection of sorted edge keys and the external surjective map.

After an operand is sorted by its (flattened) overlap key, entries that
share a key form a contiguous range. Intersecting the two operands pairs
up the ranges that carry the same key; every pair of rows inside a matched
pair of ranges contributes one product to the contraction.

The external rows of those entries are in overlap-key order, not in
output order. :func:`build_surjection` sorts them, keeps the unique rows
``F^<`` and returns ``f``, which sends every entry (in overlap-key order)
to the position of its external row in ``F^<``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from ftt.errors import FttError
from ftt.lexsort import lex_argsort, uniques


@dataclass(frozen=True)
class MatchedRange:
    range_a: tuple[int, int]
    range_b: tuple[int, int]
    key: int


@dataclass(frozen=True)
class SurjectionMap:
    perm_i: np.ndarray
    uniques_u: np.ndarray
    f: np.ndarray
    unique_rows: np.ndarray

    @property
    def n_unique(self) -> int:
        return self.unique_rows.shape[0]


def search_range(sorted_keys, key: int) -> tuple[int, int]:
    """Half-open interval of positions holding ``key`` (empty at the insertion point)."""
    keys = np.asarray(sorted_keys)
    lo = int(np.searchsorted(keys, key, side="left"))
    hi = int(np.searchsorted(keys, key, side="right"))
    return lo, hi


def _gallop(keys: list, target: int, lo: int, hi: int) -> int:
    """First position in ``keys[lo:hi]`` with value >= target, by exponential probing."""
    step = 1
    probe = lo
    while probe < hi and keys[probe] < target:
        lo = probe + 1
        probe += step
        step *= 2
    return bisect.bisect_left(keys, target, lo, min(probe + 1, hi))


def _intersect_gallop(keys_a, keys_b):
    a = [int(k) for k in keys_a]
    b = [int(k) for k in keys_b]
    i = j = 0
    na, nb = len(a), len(b)
    out = []
    while i < na and j < nb:
        ka, kb = a[i], b[j]
        if ka < kb:
            i = _gallop(a, kb, i, na)
        elif kb < ka:
            j = _gallop(b, ka, j, nb)
        else:
            ia = bisect.bisect_right(a, ka, i, na)
            jb = bisect.bisect_right(b, ka, j, nb)
            out.append((i, ia, j, jb, ka))
            i, j = ia, jb
    return out


def match_ranges(keys_a, keys_b) -> tuple[np.ndarray, ...]:
    """Vectorised intersection: arrays ``(lo_a, hi_a, lo_b, hi_b, key)``.

    Runs of equal keys in ``a`` are located with one pass; each run key is
    then binary-searched in ``b``. Results are in ascending key order.
    """
    keys_a = np.asarray(keys_a, dtype=np.int64)
    keys_b = np.asarray(keys_b, dtype=np.int64)
    if keys_a.size == 0 or keys_b.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, empty, empty
    starts = np.flatnonzero(np.diff(keys_a)) + 1
    lo_a = np.concatenate(([0], starts)).astype(np.int64)
    hi_a = np.concatenate((starts, [keys_a.size])).astype(np.int64)
    run_keys = keys_a[lo_a]
    lo_b = np.searchsorted(keys_b, run_keys, side="left").astype(np.int64)
    hi_b = np.searchsorted(keys_b, run_keys, side="right").astype(np.int64)
    hit = hi_b > lo_b
    return lo_a[hit], hi_a[hit], lo_b[hit], hi_b[hit], run_keys[hit]


def direct_intersection(keys_a, keys_b, method: str = "binary") -> list[MatchedRange]:
    """Matched key ranges between two ascending key sequences.

    ``method="binary"`` binary-searches each distinct key of ``a`` in
    ``b``; ``method="gallop"`` walks both sequences with galloping skips.
    Both give the same list, ordered by key.
    """
    if method == "gallop":
        rows = _intersect_gallop(keys_a, keys_b)
    elif method == "binary":
        rows = zip(*(arr.tolist() for arr in match_ranges(keys_a, keys_b)))
    else:
        raise FttError(f"unknown intersection method {method!r}")
    return [MatchedRange((la, ha), (lb, hb), k) for la, ha, lb, hb, k in rows]


def build_surjection(external_rows) -> SurjectionMap:
    """Map each row (in its given order) to its position among the sorted unique rows."""
    rows = np.asarray(external_rows, dtype=np.int64)
    if rows.ndim != 2:
        raise FttError("external rows must be a 2-d matrix")
    perm_i, _ = lex_argsort(rows)
    f_sorted_rows = rows[perm_i]
    u = uniques(f_sorted_rows)
    # f^<= : prefix count of unique starts, minus one
    marks = np.zeros(rows.shape[0], dtype=np.int64)
    marks[u] = 1
    f_le = np.cumsum(marks) - 1
    f = np.empty_like(f_le)
    f[perm_i] = f_le
    return SurjectionMap(perm_i, u, f, f_sorted_rows[u])
