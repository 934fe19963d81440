import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftt.canonical import canonicalize, is_well_ordered
from ftt.errors import (
    AxisGroupError,
    DataLengthError,
    IndexBoundsError,
    NotCanonicalError,
    PermutationError,
    ShapeError,
)
from ftt.tensor import (
    DenseTensor,
    SparseTensor,
    flatten_groups,
    from_dense,
    new_sparse,
    permute_axes,
    sparsity,
    to_dense,
)
from ftt.randgen import random_sparse


@st.composite
def canonical_tensors(draw, max_rank=4, max_extent=4):
    rank = draw(st.integers(1, max_rank))
    shape = tuple(draw(st.lists(st.integers(1, max_extent), min_size=rank, max_size=rank)))
    size = int(np.prod(shape))
    nnz = draw(st.integers(0, size))
    seed = draw(st.integers(0, 2**32))
    return random_sparse(shape, nnz, seed)


def test_new_sparse_identity():
    t = new_sparse((2, 2), [[0, 0], [1, 1]], [1.0, 1.0])
    assert t.shape == (2, 2)
    assert t.indices.tolist() == [[0, 0], [1, 1]]
    assert not t.canonical


def test_new_sparse_keeps_duplicates_and_order():
    t = new_sparse((3,), [[0], [0]], [1.0, 2.0])
    assert t.nnz == 2 and not t.canonical
    assert t.data.tolist() == [1.0, 2.0]


@pytest.mark.parametrize(
    "shape, indices, data, exc",
    [
        ((2, 2), [[0, 2]], [1.0], IndexBoundsError),
        ((2, 2), [[0, -1]], [1.0], IndexBoundsError),
        ((2, 2), [[0, 1, 0]], [1.0], ShapeError),
        ((2, 2), [[0, 1]], [1.0, 2.0], DataLengthError),
        ((2, 0), [[0, 0]], [1.0], ShapeError),
    ],
)
def test_new_sparse_validation(shape, indices, data, exc):
    with pytest.raises(exc):
        new_sparse(shape, indices, data)


def test_tensor_arrays_are_read_only():
    t = new_sparse((2, 2), [[0, 0]], [1.0])
    with pytest.raises(ValueError):
        t.data[0] = 3.0


def test_sparsity_examples():
    eye = canonicalize(new_sparse((2, 2), [[0, 0], [1, 1]], [1.0, 1.0]))
    assert sparsity(eye) == 0.5
    full = random_sparse((20, 20, 20, 20), 160000, 0)
    assert sparsity(full) == 1.0
    pepo = random_sparse((8,) * 6, 26, 0)
    assert sparsity(pepo) == pytest.approx(26 / 262144)
    assert 26 / 262144 == pytest.approx(9.918e-5, rel=1e-3)


def test_sparsity_rejects_non_canonical():
    with pytest.raises(NotCanonicalError):
        sparsity(new_sparse((3,), [[0], [0]], [1.0, 2.0]))


def test_to_dense_examples():
    eye = canonicalize(new_sparse((2, 2), [[0, 0], [1, 1]], [1.0, 1.0]))
    assert to_dense(eye).values.tolist() == [1.0, 0.0, 0.0, 1.0]
    empty = canonicalize(new_sparse((2, 2), [], []))
    assert to_dense(empty).values.tolist() == [0.0] * 4


def test_from_dense_examples():
    t = from_dense(DenseTensor((2, 2), [0, 5, 0, 0]), 0.0)
    assert t.indices.tolist() == [[0, 1]] and t.data.tolist() == [5.0]
    assert t.canonical
    assert from_dense(DenseTensor((2, 2), [0, 0, 0, 0])).nnz == 0
    tiny = from_dense(DenseTensor((2,), [1e-12, 1.0]), tol=1e-9)
    assert tiny.indices.tolist() == [[1]]


@settings(max_examples=60, deadline=None)
@given(canonical_tensors())
def test_dense_round_trip(t):
    assert from_dense(to_dense(t), 0.0) == t


def test_permute_axes_examples():
    t = canonicalize(new_sparse((2, 3), [[1, 2]], [4.0]))
    assert permute_axes(t, (0, 1)) is t
    p = permute_axes(t, (1, 0))
    assert p.shape == (3, 2) and p.indices.tolist() == [[2, 1]]
    assert not p.canonical
    with pytest.raises(PermutationError):
        permute_axes(t, (0, 0))


@settings(max_examples=60, deadline=None)
@given(canonical_tensors(), st.randoms(use_true_random=False))
def test_permute_axes_matches_dense_transpose(t, rnd):
    perm = list(range(t.ndim))
    rnd.shuffle(perm)
    p = canonicalize(permute_axes(t, perm))
    np.testing.assert_array_equal(to_dense(p).array, np.transpose(to_dense(t).array, perm))
    inv = np.argsort(perm)
    back = canonicalize(permute_axes(p, inv))
    assert back == t


def test_flatten_groups_examples():
    t = canonicalize(new_sparse((2, 3), [[1, 2]], [1.0]))
    f = flatten_groups(t, [[0, 1]])
    assert f.shape == (6,) and f.indices.tolist() == [[5]]
    same = flatten_groups(t, [[0], [1]])
    assert same == t and same.canonical
    with pytest.raises(AxisGroupError):
        flatten_groups(t, [[0], [0, 1]])
    with pytest.raises(AxisGroupError):
        flatten_groups(t, [[0]])


@settings(max_examples=60, deadline=None)
@given(canonical_tensors(), st.randoms(use_true_random=False))
def test_flatten_groups_matches_dense_reshape(t, rnd):
    cols = list(range(t.ndim))
    rnd.shuffle(cols)
    cut = rnd.randint(0, t.ndim)
    groups = [g for g in (cols[:cut], cols[cut:]) if g]
    f = flatten_groups(t, groups)
    assert all((f.indices[:, k] < f.shape[k]).all() for k in range(f.ndim))
    order = [c for g in groups for c in g]
    expected = np.transpose(to_dense(t).array, order).reshape(f.shape)
    np.testing.assert_array_equal(to_dense(canonicalize(f)).array, expected)


def test_flatten_in_column_order_keeps_canonical():
    t = random_sparse((3, 4, 5), 20, 3)
    f = flatten_groups(t, [[0, 1], [2]])
    assert f.canonical
    assert is_well_ordered(f.indices)


def test_scalar_sparse_tensor():
    t = new_sparse((), [[], []], [1.0, 2.0])
    assert t.indices.shape == (2, 0)
    c = canonicalize(t)
    assert c.nnz == 1 and c.data.tolist() == [3.0]
    assert to_dense(c).array.shape == ()
    assert float(to_dense(c).array) == 3.0


def test_equality_ignores_flag_but_not_data():
    a = SparseTensor((2,), [[0]], [1.0], canonical=True)
    b = SparseTensor((2,), [[0]], [1.0], canonical=False)
    assert a == b
    assert a != SparseTensor((2,), [[0]], [2.0])


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.integers(1, 5), min_size=1, max_size=4),
    st.integers(0, 2**32),
)
def test_fuzzed_out_of_bounds_always_raises(shape, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    rows = np.stack([rng.integers(0, s, size=n) for s in shape], axis=1)
    r, c = int(rng.integers(n)), int(rng.integers(len(shape)))
    rows[r, c] = shape[c] + int(rng.integers(0, 3)) if rng.random() < 0.5 else -1 - int(rng.integers(0, 3))
    with pytest.raises(IndexBoundsError):
        new_sparse(shape, rows, np.ones(n))
