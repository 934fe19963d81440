import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ftt.canonical import canonicalize, is_partially_ordered, is_well_ordered, sort_permutation
from ftt.lexsort import lex_argsort, uniques
from ftt.tensor import SparseTensor, from_dense, new_sparse, to_dense, DenseTensor

from helpers import raw_sparse


def accumulate_dense(t):
    """Oracle: += every raw entry into a zero buffer, in input order."""
    out = np.zeros(t.shape)
    for row, v in zip(t.indices.tolist(), t.data.tolist()):
        out[tuple(row)] += v
    return out


def test_duplicate_sum_example():
    t = new_sparse((3, 2), [[0, 1], [0, 1], [2, 0]], [1.0, 2.0, 3.0])
    c = canonicalize(t)
    assert c.indices.tolist() == [[0, 1], [2, 0]]
    assert c.data.tolist() == [3.0, 3.0]
    assert c.canonical


def test_canonical_input_is_returned_unchanged():
    t = canonicalize(new_sparse((2, 2), [[1, 1], [0, 0]], [1.0, 2.0]))
    assert canonicalize(t) is t


def test_zero_sums_are_kept():
    c = canonicalize(new_sparse((2,), [[1], [1]], [1.0, -1.0]))
    assert c.indices.tolist() == [[1]] and c.data.tolist() == [0.0]


def test_order_predicate_examples():
    assert is_well_ordered([[0, 0], [0, 1]])
    assert not is_well_ordered([[0, 0], [0, 0]])
    assert is_partially_ordered([[0, 0], [0, 0]])
    assert not is_well_ordered([[1, 0], [0, 1]])
    assert not is_partially_ordered([[1, 0], [0, 1]])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_canonicalize_against_dense_accumulation(seed):
    rng = np.random.default_rng(seed)
    shape = tuple(int(s) for s in rng.integers(1, 5, size=int(rng.integers(1, 5))))
    t = raw_sparse(rng, shape, int(rng.integers(0, 40)), unique=False)
    c = canonicalize(t)
    assert is_well_ordered(c.indices)
    np.testing.assert_array_equal(to_dense(c).array, accumulate_dense(t))
    assert canonicalize(SparseTensor(c.shape, c.indices, c.data)) == c
    perm, _ = lex_argsort(t.indices)
    assert c.nnz == (uniques(t.indices[perm]).size if t.nnz else 0)


def test_accumulation_exact_on_long_runs():
    # long duplicate runs: a pairwise-summing reduction would round differently
    rng = np.random.default_rng(5)
    data = rng.uniform(-1, 1, size=500) * 10.0 ** rng.integers(-8, 8, size=500)
    t = new_sparse((1,), np.zeros((500, 1), dtype=int), data)
    acc = 0.0
    for v in data.tolist():
        acc += v
    assert canonicalize(t).data.tolist() == [acc]


def test_huge_dense_size_uses_column_sort():
    shape = (2**40, 2**40)
    idx = np.array([[5, 1], [3, 2**39], [5, 0], [3, 2**39]])
    t = new_sparse(shape, idx, [1.0, 2.0, 3.0, 4.0])
    assert sort_permutation(idx, shape).tolist() == [1, 3, 2, 0]
    c = canonicalize(t)
    assert c.indices.tolist() == [[3, 2**39], [5, 0], [5, 1]]
    assert c.data.tolist() == [6.0, 3.0, 1.0]


def test_from_dense_output_is_canonical():
    d = DenseTensor((2, 3), np.arange(6.0))
    t = from_dense(d)
    assert canonicalize(SparseTensor(t.shape, t.indices, t.data)) == t
