import pytest

from ftt.errors import ExtentMismatchError, ShapeError, SubscriptError
from ftt.plan import build_plan, parse_subscripts, plan_for


def test_parse_matmul():
    assert parse_subscripts("ab,bc->ac") == (("a", "b"), ("b", "c"), ("a", "c"))


def test_parse_mpo():
    a, b, out = parse_subscripts("ABab,BCcd->ACabcd")
    assert "".join(a) == "ABab" and "".join(b) == "BCcd" and "".join(out) == "ACabcd"


def test_parse_direct_product():
    plan = plan_for("ab,cd->abcd", (2, 3), (4, 5))
    assert plan.overlaps == ()
    assert plan.external_a == (0, 1) and plan.external_b == (0, 1)


@pytest.mark.parametrize(
    "spec",
    ["ab,bc", "ab->ac", "a1,bc->ac", "aab,bc->ac", "ab,bc->acc", "ab,bc->ax", "ab,bc,cd->ad", ""],
)
def test_parse_errors(spec):
    with pytest.raises(SubscriptError):
        parse_subscripts(spec)


def test_build_plan_matmul():
    plan = plan_for("ab,bc->ac", (2, 3), (3, 4))
    assert plan.overlaps == ((1, 0),)
    assert plan.external_a == (0,) and plan.external_b == (1,)
    assert plan.extents == {"a": 2, "b": 3, "c": 4}
    assert plan.output_perm == (0, 1)


def test_build_plan_extent_mismatch():
    with pytest.raises(ExtentMismatchError):
        plan_for("ab,bc->ac", (2, 3), (5, 4))


def test_build_plan_pepo():
    plan = plan_for("ABCDab,DEFGcd->ABCEFGabcd", (8,) * 6, (8,) * 6)
    assert plan.overlaps == ((3, 0),)
    assert plan.external_a == (0, 1, 2, 4, 5)
    assert plan.external_b == (1, 2, 3, 4, 5)
    assert plan.external_labels == tuple("ABCabEFGcd")
    assert plan.output_shape == (8,) * 10


def test_batch_labels_rejected():
    with pytest.raises(SubscriptError):
        plan_for("ab,bc->abc", (2, 3), (3, 4))


def test_rank_mismatch():
    with pytest.raises(ShapeError):
        plan_for("abc,bc->a", (2, 3), (3, 4))


def test_overlap_order_follows_first_operand():
    plan = plan_for("abc,cba->", (2, 3, 4), (4, 3, 2))
    assert plan.contracted == ("a", "b", "c")
    assert plan.overlaps == ((0, 2), (1, 1), (2, 0))


def test_partition_and_determinism():
    spec, sa, sb = "AbCd,dxbQ->QxCA", (2, 3, 4, 5), (5, 6, 3, 7)
    plan = plan_for(spec, sa, sb)
    assert sorted(plan.external_a + plan.overlap_a) == [0, 1, 2, 3]
    assert sorted(plan.external_b + plan.overlap_b) == [0, 1, 2, 3]
    assert not set(plan.external_a) & set(plan.overlap_a)
    assert plan == plan_for(spec, sa, sb)
    assert plan.output_shape == (7, 6, 4, 2)


def test_dropped_external_label_is_summed():
    plan = plan_for("ab,bc->a", (2, 3), (3, 4))
    assert plan.summed_labels == ("c",)
    assert plan.output_perm == (0,)


def test_swapped_plan():
    plan = plan_for("ab,bc->ca", (2, 3), (3, 4))
    sw = plan.swapped()
    assert sw.labels_a == ("b", "c") and sw.output_labels == ("c", "a")
    assert sw.output_shape == plan.output_shape
