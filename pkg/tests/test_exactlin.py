from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from liekit.errors import AmbientMismatch, NonSquare, ZeroPolynomial
from liekit.exactlin import (
    Matrix,
    Polynomial,
    Subspace,
    charpoly,
    det,
    inverse,
    kernel,
    rank,
    rational_roots,
    rref,
    solve,
)

from oracles import charpoly_by_interpolation, cofactor_det, leibniz_det

small = st.integers(min_value=-4, max_value=4)
fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3))


def matrices(max_dim=4, entries=small, square=False):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_dim))
        c = r if square else draw(st.integers(1, max_dim))
        return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)])

    return build()


# -- rref / rank / kernel ---------------------------------------------------------


def test_rref_examples():
    assert rref(Matrix.identity(3)) == (Matrix.identity(3), 3)
    assert rref(Matrix([[1, 2], [2, 4]])) == (Matrix([[1, 2], [0, 0]]), 1)
    assert rref(Matrix([[0, 1], [1, 0]])) == (Matrix.identity(2), 2)


def test_kernel_examples():
    assert kernel(Matrix.zeros(2)) == Subspace.full(2)
    assert kernel(Matrix.identity(3)).is_zero()
    assert kernel(Matrix([[0, 1], [0, 0]])) == Subspace.span([(1, 0)], 2)


@given(matrices(entries=fractions))
def test_rref_idempotent(m):
    r, _ = rref(m)
    assert rref(r)[0] == r


@given(matrices(max_dim=5))
def test_rank_nullity(m):
    assert rank(m) + kernel(m).dim == m.ncols


@given(matrices(max_dim=5))
def test_kernel_vectors_are_annihilated(m):
    for v in kernel(m).vectors():
        assert not any(m.apply(v))


# -- determinants --------------------------------------------------------------------


def test_det_examples():
    assert det(Matrix.identity(4)) == 1
    assert det(Matrix([[8, 0], [0, 0]])) == 0
    assert det(Matrix([[0, 4], [4, 0]])) == -16
    # cofactor oracle agrees with the frozen values
    assert cofactor_det([[8, 0], [0, 0]]) == 0
    assert cofactor_det([[0, 4], [4, 0]]) == -16


def test_det_rejects_non_square():
    with pytest.raises(NonSquare):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_det_empty_matrix_is_one():
    assert det(Matrix((), 0)) == 1


@given(matrices(max_dim=5, entries=fractions, square=True))
def test_det_matches_cofactor_oracle(m):
    assert det(m) == cofactor_det(m.tolist())


@given(matrices(max_dim=4, square=True))
def test_det_matches_leibniz_oracle(m):
    assert det(m) == leibniz_det(m.tolist())


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))))
def test_det_multiplicative(pair):
    A, B = Matrix(pair[0]), Matrix(pair[1])
    assert det(A @ B) == det(A) * det(B)


@given(matrices(max_dim=4, square=True))
def test_inverse(m):
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(m.nrows)


def test_solve():
    m = Matrix([[1, 2], [3, 4]])
    assert solve(m, [5, 6]) == (Fraction(-4), Fraction(9, 2))
    assert solve(Matrix([[1, 1], [1, 1]]), [1, 2]) is None


# -- characteristic polynomial and roots ---------------------------------------------


def test_charpoly_examples():
    assert charpoly(Matrix.diag(1, 2)) == Polynomial([2, -3, 1])
    assert charpoly(Matrix.zeros(2)) == Polynomial([0, 0, 1])
    assert charpoly(Matrix([[0, 1], [0, 0]])) == Polynomial([0, 0, 1])
    # interpolation oracle reproduces the frozen coefficients
    assert charpoly_by_interpolation([[1, 0], [0, 2]]) == [2, -3, 1]


def test_charpoly_rejects_non_square():
    with pytest.raises(NonSquare):
        charpoly(Matrix([[1, 2]]))


@given(matrices(max_dim=5, entries=fractions, square=True))
@settings(max_examples=60)
def test_charpoly_matches_interpolation_oracle(m):
    assert list(charpoly(m).coeffs) == charpoly_by_interpolation(m.tolist())


@given(matrices(max_dim=6, square=True))
@settings(max_examples=60)
def test_cayley_hamilton(m):
    assert charpoly(m).evaluate_matrix(m).is_zero()


def test_rational_roots_examples():
    assert rational_roots(Polynomial([2, -3, 1])) == ([(1, 1), (2, 1)], True)
    assert rational_roots(Polynomial([0, 0, 1])) == ([(0, 2)], True)
    assert rational_roots(Polynomial([1, 0, 1])) == ([], False)


def test_rational_roots_fractional_and_mixed():
    # (2t - 1)^2 (t + 3) (t^2 - 2)
    p = Polynomial([-1, 1]) * Polynomial([-1, 2]) * Polynomial([-1, 2]) * Polynomial([3, 1]) * Polynomial([-2, 0, 1])
    roots, splits = rational_roots(p)
    assert roots == [(Fraction(-3), 1), (Fraction(1, 2), 2), (Fraction(1), 1)]
    assert not splits


def test_rational_roots_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        rational_roots(Polynomial())


def test_rational_roots_constant():
    assert rational_roots(Polynomial([5])) == ([], True)


@given(st.lists(st.tuples(fractions, st.integers(1, 3)), min_size=1, max_size=4))
def test_rational_roots_recovers_constructed_roots(spec):
    p = Polynomial([1])
    expected = {}
    for r, m in spec:
        expected[r] = expected.get(r, 0) + m
        for _ in range(m):
            p = p * Polynomial([-r, 1])
    roots, splits = rational_roots(p)
    assert splits
    assert roots == sorted(expected.items())


# -- subspaces --------------------------------------------------------------------------


def test_subspace_examples():
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    a = Subspace.span([e1, e2], 3)
    b = Subspace.span([e2, e3], 3)
    assert a & b == Subspace.span([e2], 3)
    assert Subspace.span([e1], 3) + Subspace.span([e2], 3) == a
    assert (1, 0) not in Subspace.span([(1, 1)], 2)


def test_subspace_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.full(2) & Subspace.full(3)
    with pytest.raises(AmbientMismatch):
        Subspace.full(2) + Subspace.full(3)


def test_subspace_canonical_form():
    a = Subspace.span([(2, 4, 0), (1, 1, 1)], 3)
    b = Subspace.span([(3, 5, 1), (0, 2, -2), (1, 1, 1)], 3)
    assert a == b
    assert a.basis == b.basis


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=4),
       st.lists(st.lists(small, min_size=4, max_size=4), max_size=4))
def test_subspace_lattice_dimensions(u, v):
    a, b = Subspace.span(u, 4), Subspace.span(v, 4)
    meet, join = a & b, a + b
    assert meet.dim + join.dim == a.dim + b.dim
    assert a.contains_subspace(meet) and b.contains_subspace(meet)
    assert join.contains_subspace(a) and join.contains_subspace(b)


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), max_size=3))
def test_equality_iff_identical_basis(u, v):
    a, b = Subspace.span(u, 3), Subspace.span(v, 3)
    same = a.contains_subspace(b) and b.contains_subspace(a)
    assert (a == b) == same == (a.basis == b.basis)


def test_coordinates_and_combine_roundtrip():
    s = Subspace.span([(1, 2, 3), (0, 1, 1)], 3)
    v = (2, 7, 9)
    assert v in s
    assert s.combine(s.coordinates(v)) == tuple(Fraction(x) for x in v)
