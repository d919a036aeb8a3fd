import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cotorsion import _fallback, kernels, linalg

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    p = draw(PRIMES)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    a = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return a, p


def brute_rank(a, p):
    """Rank as log_p of the number of distinct vectors in the row space (exhaustive)."""
    r = a.shape[0]
    coeffs = np.array(list(itertools.product(range(p), repeat=r)), dtype=np.int64)
    span = {tuple(v) for v in (coeffs @ a) % p}
    return round(np.log(len(span)) / np.log(p))


@given(matrices(max_rows=4, max_cols=5))
def test_rank_matches_exhaustive_span(ap):
    a, p = ap
    assert linalg.rank(a, p) == brute_rank(a, p)


@given(matrices())
def test_rank_nullity(ap):
    a, p = ap
    k = linalg.kernel_basis(a, p)
    assert linalg.rank(a, p) + k.shape[0] == a.shape[1]
    assert not (a @ k.T % p).any()


@given(matrices())
def test_rref_is_reduced(ap):
    a, p = ap
    r, piv = linalg.rref(a, p)
    for row, c in enumerate(piv):
        assert r[row, c] == 1
        assert np.count_nonzero(r[:, c]) == 1
    assert not r[len(piv):].any()
    assert list(piv) == sorted(piv)


@given(matrices())
def test_backends_agree(ap):
    a, p = ap
    r1, p1 = _fallback.rref(a, p)
    r2, p2 = kernels.rref(a, p)
    assert np.array_equal(r1, r2) and tuple(p1) == tuple(p2)


@given(matrices(), st.data())
def test_solve_consistent_systems(ap, data):
    a, p = ap
    x0 = data.draw(arrays(np.int64, a.shape[1], elements=st.integers(0, p - 1)))
    b = a @ x0 % p
    x, kern = linalg.solve(a, b, p)
    assert np.array_equal(a @ x % p, b)
    assert kern.shape[0] == a.shape[1] - linalg.rank(a, p)


def test_solve_inconsistent_raises():
    a = np.array([[1, 0], [1, 0]])
    with pytest.raises(linalg.Inconsistent):
        linalg.solve(a, np.array([0, 1]), 2)
    assert linalg.try_solve(a, np.array([0, 1]), 2) is None


@given(matrices(max_rows=5, max_cols=5))
def test_inverse(ap):
    a, p = ap
    if a.shape[0] != a.shape[1] or not linalg.is_invertible(a, p):
        return
    inv = linalg.inverse(a, p)
    assert np.array_equal(a @ inv % p, np.eye(a.shape[0], dtype=np.int64))


@given(matrices(), matrices())
def test_intersection_and_sum_dimensions(ap, bq):
    a, p = ap
    b = bq[0][:, : a.shape[1]] % p
    if b.shape[1] != a.shape[1]:
        return
    s = linalg.span_sum(a, b, p)
    i = linalg.intersect(a, b, p)
    assert s.shape[0] + i.shape[0] == linalg.rank(a, p) + linalg.rank(b, p)
    for v in i:
        assert linalg.in_span(a, v, p) and linalg.in_span(b, v, p)


@given(matrices())
def test_complement(ap):
    a, p = ap
    basis = linalg.row_basis(a, p, a.shape[1])
    comp = linalg.complement(basis, p, a.shape[1])
    assert basis.shape[0] + comp.shape[0] == a.shape[1]
    assert linalg.rank(np.concatenate([basis, comp]), p) == a.shape[1]


def test_all_vectors_counts():
    assert linalg.all_vectors(3, 3).shape == (27, 3)
    assert len({tuple(v) for v in linalg.all_vectors(3, 3)}) == 27
    assert linalg.all_vectors(0, 2).shape == (1, 0)


def test_prime_field_rejects_composites():
    assert linalg.is_prime(7) and not linalg.is_prime(9)
    with pytest.raises(ValueError):
        linalg.PrimeField(4)
