"""Subscript parsing and the label intersection of a pairwise contraction.

Each operand's columns split into an external group (labels carried by
one operand only) and one overlap column per contracted label. External
labels left out of the output are summed after the contraction. The overlap
list pairs the column in ``a`` with the column in ``b`` for each edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ftt.errors import ExtentMismatchError, ShapeError, SubscriptError

_SUBSCRIPT_RE = re.compile(r"^([A-Za-z]+),([A-Za-z]+)->([A-Za-z]*)$")


@dataclass(frozen=True)
class ContractionPlan:
    labels_a: tuple[str, ...]
    labels_b: tuple[str, ...]
    output_labels: tuple[str, ...]
    external_a: tuple[int, ...]
    external_b: tuple[int, ...]
    overlaps: tuple[tuple[int, int], ...]
    extents: dict

    @property
    def contracted(self) -> tuple[str, ...]:
        return tuple(self.labels_a[i] for i, _ in self.overlaps)

    @property
    def overlap_a(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.overlaps)

    @property
    def overlap_b(self) -> tuple[int, ...]:
        return tuple(j for _, j in self.overlaps)

    @property
    def external_labels(self) -> tuple[str, ...]:
        """Labels in the internal result order: external ``a`` then external ``b``."""
        return tuple(self.labels_a[c] for c in self.external_a) + tuple(
            self.labels_b[c] for c in self.external_b
        )

    @property
    def summed_labels(self) -> tuple[str, ...]:
        """External labels missing from the output; they are summed away."""
        return tuple(lab for lab in self.external_labels if lab not in self.output_labels)

    @property
    def output_perm(self) -> tuple[int, ...]:
        """Columns of the internal result order that form ``output_labels``, in order."""
        pos = {lab: k for k, lab in enumerate(self.external_labels)}
        return tuple(pos[lab] for lab in self.output_labels)

    @property
    def output_shape(self) -> tuple[int, ...]:
        return tuple(self.extents[lab] for lab in self.output_labels)

    @property
    def max_output_rows(self) -> int:
        n = 1
        for lab in self.output_labels:
            n *= self.extents[lab]
        return n

    def swapped(self) -> ContractionPlan:
        """The same contraction with the operands exchanged."""
        return build_plan(
            self.labels_b,
            self.labels_a,
            self.output_labels,
            [self.extents[lab] for lab in self.labels_b],
            [self.extents[lab] for lab in self.labels_a],
        )


def parse_subscripts(spec: str) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """Split ``"ab,bc->ac"`` into its three label tuples."""
    m = _SUBSCRIPT_RE.match(spec.strip())
    if m is None:
        raise SubscriptError(f"malformed subscripts {spec!r}; expected 'ab,bc->ac'")
    a, b, out = (tuple(g) for g in m.groups())
    for name, labels in (("first operand", a), ("second operand", b), ("output", out)):
        if len(set(labels)) != len(labels):
            raise SubscriptError(f"repeated label in {name} of {spec!r}")
    missing = set(out) - set(a) - set(b)
    if missing:
        raise SubscriptError(f"output labels {sorted(missing)} absent from the inputs")
    return a, b, out


def build_plan(labels_a, labels_b, output_labels, shape_a, shape_b) -> ContractionPlan:
    labels_a, labels_b = tuple(labels_a), tuple(labels_b)
    output_labels = tuple(output_labels)
    shape_a, shape_b = tuple(int(s) for s in shape_a), tuple(int(s) for s in shape_b)
    if len(shape_a) != len(labels_a) or len(shape_b) != len(labels_b):
        raise ShapeError("operand rank does not match its number of labels")

    extents = dict(zip(labels_a, shape_a))
    for lab, ext in zip(labels_b, shape_b):
        if extents.setdefault(lab, ext) != ext:
            raise ExtentMismatchError(
                f"label {lab!r} has extent {extents[lab]} in a but {ext} in b"
            )

    shared = set(labels_a) & set(labels_b)
    batch = shared & set(output_labels)
    if batch:
        raise SubscriptError(
            f"labels {sorted(batch)} appear in both operands and the output; "
            "batch axes are not supported"
        )
    overlaps = tuple(
        (i, labels_b.index(lab)) for i, lab in enumerate(labels_a) if lab in shared
    )
    external_a = tuple(i for i, lab in enumerate(labels_a) if lab not in shared)
    external_b = tuple(j for j, lab in enumerate(labels_b) if lab not in shared)

    return ContractionPlan(
        labels_a, labels_b, output_labels, external_a, external_b, overlaps, extents
    )


def plan_for(spec: str, shape_a, shape_b) -> ContractionPlan:
    return build_plan(*parse_subscripts(spec), shape_a, shape_b)
