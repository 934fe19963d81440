"""Pairwise contraction kernels: sparse x sparse and sparse x dense.

The sparse x sparse kernel follows the sort / intersect / map / sum flow:

1. split each operand's columns into the external group and the overlap
   columns, and flatten the overlap columns into one integer key;
2. stable-sort each operand by that key;
3. build the surjective map from each sorted entry to its unique external
   row;
4. intersect the two key sequences into matched ranges;
5. for every matched range emit all (row of a, row of b) products, indexed
   by the pair of unique-external positions;
6. canonicalize, which sums products landing on the same external pair;
7. expand the pairs to external rows and reorder to the output labels.

Because both unique-external row sets are strictly ordered, ordering the
products by (position in a, position in b) already orders them by their
full external tuple, so step 6 only sorts small integer pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ftt.canonical import canonicalize
from ftt.errors import ShapeError, SubscriptError
from ftt.intersect import build_surjection, match_ranges
from ftt.lexsort import tuple_keys
from ftt.oracle import dense_contract
from ftt.plan import ContractionPlan, parse_subscripts, plan_for
from ftt.tensor import DenseTensor, SparseTensor, flatten_dense_groups, permute_axes

# max number of (entry, column) cells materialised per sparse x dense chunk
_DENSE_CHUNK_CELLS = 1 << 22


@dataclass
class ContractionStats:
    """Work counters filled in by a kernel when passed as ``stats``."""

    mult_count: int = 0
    n_matches: int = 0
    out_rows: int = 0


def _check_operand(shape, labels, plan: ContractionPlan, which: str) -> None:
    expected = tuple(plan.extents[lab] for lab in labels)
    if tuple(shape) != expected:
        raise ShapeError(f"operand {which} has shape {tuple(shape)}, plan expects {expected}")


def _sorted_by_edge(t: SparseTensor, overlap_cols, radices):
    keys = tuple_keys(t.indices[:, list(overlap_cols)], radices)
    order = np.argsort(keys, kind="stable")
    return keys[order], t.indices[order], t.data[order]


def _expand_pairs(lo_a, hi_a, lo_b, hi_b):
    """Row-major enumeration of every (ra, rb) in each range_a x range_b."""
    len_b = hi_b - lo_b
    counts = (hi_a - lo_a) * len_b
    total = int(counts.sum())
    match = np.repeat(np.arange(counts.size), counts)
    first = np.cumsum(counts) - counts
    offset = np.arange(total, dtype=np.int64) - first[match]
    lb = len_b[match]
    return lo_a[match] + offset // lb, lo_b[match] + offset % lb


def _to_output(result: SparseTensor, plan: ContractionPlan) -> SparseTensor:
    perm = plan.output_perm
    if perm == tuple(range(result.ndim)):
        return result
    if len(perm) == result.ndim:
        return canonicalize(permute_axes(result, perm))
    # external labels missing from the output are summed by canonicalize
    shape = [result.shape[p] for p in perm]
    return canonicalize(
        SparseTensor(shape, result.indices[:, list(perm)], result.data, canonical=False)
    )


def contract_sparse_sparse(
    a: SparseTensor,
    b: SparseTensor,
    plan: ContractionPlan,
    stats: ContractionStats | None = None,
) -> SparseTensor:
    _check_operand(a.shape, plan.labels_a, plan, "a")
    _check_operand(b.shape, plan.labels_b, plan, "b")
    a, b = canonicalize(a), canonicalize(b)

    radices = [plan.extents[lab] for lab in plan.contracted]
    keys_a, rows_a, data_a = _sorted_by_edge(a, plan.overlap_a, radices)
    keys_b, rows_b, data_b = _sorted_by_edge(b, plan.overlap_b, radices)

    surj_a = build_surjection(rows_a[:, list(plan.external_a)])
    surj_b = build_surjection(rows_b[:, list(plan.external_b)])

    lo_a, hi_a, lo_b, hi_b, _ = match_ranges(keys_a, keys_b)
    ra, rb = _expand_pairs(lo_a, hi_a, lo_b, hi_b)

    pairs = SparseTensor(
        (max(surj_a.n_unique, 1), max(surj_b.n_unique, 1)),
        np.stack([surj_a.f[ra], surj_b.f[rb]], axis=1),
        data_a[ra] * data_b[rb],
    )
    pairs = canonicalize(pairs)
    rows = np.hstack(
        [surj_a.unique_rows[pairs.indices[:, 0]], surj_b.unique_rows[pairs.indices[:, 1]]]
    )
    ext_shape = [a.shape[c] for c in plan.external_a] + [b.shape[c] for c in plan.external_b]
    result = _to_output(SparseTensor(ext_shape, rows, pairs.data, canonical=True), plan)

    assert result.nnz <= plan.max_output_rows
    if stats is not None:
        stats.mult_count = int(ra.size)
        stats.n_matches = int(lo_a.size)
        stats.out_rows = result.nnz
    return result


def contract_sparse_dense(
    s: SparseTensor,
    d: DenseTensor,
    plan: ContractionPlan,
    stats: ContractionStats | None = None,
) -> DenseTensor:
    """Sparse operand ``a`` traced with dense operand ``b``.

    Both operands are matricised: the sparse entries get one row index
    over their external axes and one column index over their contracted
    axes; the dense operand becomes ``D[J_E, J_I]``. Each sparse entry
    then adds ``data * D[:, col]`` into row ``row`` of ``O[I_E, J_E]``.
    """
    _check_operand(s.shape, plan.labels_a, plan, "a")
    _check_operand(d.shape, plan.labels_b, plan, "b")
    s = canonicalize(s)

    ext_a = [plan.extents[plan.labels_a[c]] for c in plan.external_a]
    ext_b = [plan.extents[plan.labels_b[c]] for c in plan.external_b]
    radices = [plan.extents[lab] for lab in plan.contracted]

    rows = tuple_keys(s.indices[:, list(plan.external_a)], ext_a)
    cols = tuple_keys(s.indices[:, list(plan.overlap_a)], radices)
    dmat = flatten_dense_groups(d, [plan.external_b, plan.overlap_b])

    out = np.zeros((math.prod(ext_a), dmat.shape[0]), dtype=np.float64)
    step = max(1, _DENSE_CHUNK_CELLS // max(1, dmat.shape[0]))
    for lo in range(0, s.nnz, step):
        hi = min(lo + step, s.nnz)
        contrib = s.data[lo:hi, None] * dmat[:, cols[lo:hi]].T
        np.add.at(out, rows[lo:hi], contrib)

    perm = plan.output_perm
    summed = [k for k in range(len(ext_a) + len(ext_b)) if k not in perm]
    arr = np.transpose(out.reshape(ext_a + ext_b), list(perm) + summed)
    if summed:
        arr = arr.reshape(plan.output_shape + (-1,)).sum(axis=-1)
    if stats is not None:
        stats.mult_count = s.nnz * dmat.shape[0]
        stats.n_matches = s.nnz
        stats.out_rows = arr.size
    return DenseTensor(plan.output_shape, arr)


def contract_pair(a, b, spec: str, stats: ContractionStats | None = None):
    """Parse ``spec`` and dispatch on operand kinds.

    The result is sparse only when both operands are sparse. A dense
    ``a`` with sparse ``b`` is commuted; two dense operands go to the
    brute-force oracle.
    """
    plan = plan_for(spec, a.shape, b.shape)
    if isinstance(a, SparseTensor) and isinstance(b, SparseTensor):
        return contract_sparse_sparse(a, b, plan, stats)
    if isinstance(a, SparseTensor):
        return contract_sparse_dense(a, b, plan, stats)
    if isinstance(b, SparseTensor):
        return contract_sparse_dense(b, a, plan.swapped(), stats)
    return dense_contract(a, b, plan)


def contract_path(operands: Sequence, specs: Sequence[str]):
    """Left-to-right fold of :func:`contract_pair` over a chain of specs.

    Each spec's first operand labels must repeat the previous spec's
    output labels.
    """
    if len(specs) != len(operands) - 1:
        raise SubscriptError(
            f"{len(operands)} operands need {len(operands) - 1} specs, got {len(specs)}"
        )
    result = operands[0]
    prev_out = None
    for spec, operand in zip(specs, operands[1:]):
        labels_a, _, out = parse_subscripts(spec)
        if prev_out is not None and labels_a != prev_out:
            raise SubscriptError(
                f"spec {spec!r} expects {''.join(labels_a)!r} but the running "
                f"result is labelled {''.join(prev_out)!r}"
            )
        result = contract_pair(result, operand, spec)
        prev_out = out
    return result
