"""Brute-force dense contraction, the ground truth for the sparse kernels.

Deliberately naive: plain Python loops over every label assignment, no
numpy arithmetic and nothing shared with the kernels. Output cells are
visited in row-major order; inside a cell the summed labels (contracted
first, then dropped external labels) are also visited row-major, starting
from ``0.0``.
"""

from __future__ import annotations

import itertools
import math

from ftt.errors import OracleGuardError, ShapeError
from ftt.plan import ContractionPlan
from ftt.tensor import DenseTensor

MAX_LOOP_SIZE = 10**7


def _strides(shape):
    strides = [1] * len(shape)
    for k in range(len(shape) - 2, -1, -1):
        strides[k] = strides[k + 1] * shape[k + 1]
    return strides


def dense_contract(a: DenseTensor, b: DenseTensor, plan: ContractionPlan) -> DenseTensor:
    for t, labels, name in ((a, plan.labels_a, "a"), (b, plan.labels_b, "b")):
        expected = tuple(plan.extents[lab] for lab in labels)
        if tuple(t.shape) != expected:
            raise ShapeError(f"operand {name} has shape {t.shape}, plan expects {expected}")

    out_labels = list(plan.output_labels)
    sum_labels = list(plan.contracted) + list(plan.summed_labels)
    loop_size = math.prod(plan.extents[lab] for lab in out_labels + sum_labels)
    if loop_size > MAX_LOOP_SIZE:
        raise OracleGuardError(
            f"oracle loop over {loop_size} label assignments exceeds {MAX_LOOP_SIZE}"
        )

    order = out_labels + sum_labels
    pos = {lab: k for k, lab in enumerate(order)}
    va = a.values.tolist()
    vb = b.values.tolist()
    sa = _strides(a.shape)
    sb = _strides(b.shape)
    # (position in the assignment tuple, stride) for each operand axis
    map_a = [(pos[lab], st) for lab, st in zip(plan.labels_a, sa)]
    map_b = [(pos[lab], st) for lab, st in zip(plan.labels_b, sb)]

    out_ranges = [range(plan.extents[lab]) for lab in out_labels]
    sum_ranges = [range(plan.extents[lab]) for lab in sum_labels]
    values = []
    for out_idx in itertools.product(*out_ranges):
        acc = 0.0
        for sum_idx in itertools.product(*sum_ranges):
            full = out_idx + sum_idx
            ia = 0
            for p, st in map_a:
                ia += full[p] * st
            ib = 0
            for p, st in map_b:
                ib += full[p] * st
            acc += va[ia] * vb[ib]
        values.append(acc)
    return DenseTensor(plan.output_shape, values)


def max_abs_diff(a: DenseTensor, b: DenseTensor) -> float:
    if tuple(a.shape) != tuple(b.shape):
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    va, vb = a.values.tolist(), b.values.tolist()
    return max((abs(x - y) for x, y in zip(va, vb)), default=0.0)
