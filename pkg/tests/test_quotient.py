import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_system, ring
from zerodec.groebner import buchberger, ideal_of_points
from zerodec.linalg import Matrix, min_poly, poly_at_matrix, symbolic_ring
from zerodec.polyring import univariate_ring
from zerodec.quotient import (
    QuotientAuditError,
    QuotientStructure,
    audit_commutativity,
    block_char_poly,
    mult_matrices,
    variable_char_polys,
)

L = univariate_ring("lambda")


@pytest.fixture(scope="module")
def worked():
    _, ps = load_system("worked4.txt", "lex")
    return mult_matrices(buchberger(ps))


def test_basis_and_dimension(worked):
    assert worked.dimension == 4
    assert worked.basis == ((0, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0), (0, 1, 0, 1))


def test_matrix_columns_are_normal_forms(worked):
    # x4 * x4 = 3*x4 - 2 modulo the basis
    M4 = worked.matrices[3]
    assert M4.column(1) == [-2, 3, 0, 0]
    R = worked.gb.ring
    assert worked.coordinates(R.parse("x4^2")) == [-2, 3, 0, 0]


def test_min_poly_of_x4(worked):
    M = worked.matrices[3]
    assert min_poly(M) == L.parse("lambda^2 - 3*lambda + 2")
    # oracle: annihilated, and not scalar so no linear annihilator exists
    assert (M @ M - M.scale(3) + Matrix.identity(4).scale(2)).is_zero()
    assert M != Matrix.identity(4).scale(M[0, 0])


def test_char_polys_match_point_coordinates(worked):
    # the characteristic polynomial of m_{x_i} is prod over zeros of (lambda - p_i)
    pts = [(-1, 0, 0, 1), (-1, 0, -1, 2), (0, -1, 0, 1), (0, -1, -1, 2)]
    lam = L.gen(0)
    for i, f in enumerate(variable_char_polys(worked)):
        expected = L.one()
        for p in pts:
            expected = expected * (lam - p[i])
        assert f == expected


def test_block_char_poly_worked(worked):
    S = symbolic_ring(4)
    F2 = block_char_poly(worked, [3])
    assert F2 == S.parse("(lambda-t4)^2*(lambda-2*t4)^2")
    with pytest.raises(ValueError):
        block_char_poly(worked, [])
    with pytest.raises(ValueError):
        block_char_poly(worked, [7])


def test_matrix_of_polynomial(worked):
    R = worked.gb.ring
    f = R.parse("x1*x4 + 2")
    Mf = worked.matrix_of(f)
    assert Mf.column(0) == worked.coordinates(f)


def test_audit_detects_non_commuting(worked):
    bad = QuotientStructure(worked.gb, worked.basis, (Matrix.rational([[0, 1], [0, 0]]), Matrix.rational([[0, 0], [1, 0]])))
    with pytest.raises(QuotientAuditError):
        audit_commutativity(bad)


def test_random_vector_audit_on_large_quotient():
    _, ps = load_system("cyclic5.txt")
    Q = mult_matrices(buchberger(ps))
    assert Q.dimension == 70
    for A, B in itertools.combinations(Q.matrices[:2], 2):
        assert A @ B == B @ A


R2 = ring("x y")
point_sets = st.sets(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=5)


@settings(max_examples=30, deadline=None)
@given(point_sets)
def test_eigenvalue_property(pts):
    pts = sorted(pts)
    Q = mult_matrices(ideal_of_points(pts, R2))
    lam = L.gen(0)
    for i, (M, f) in enumerate(zip(Q.matrices, variable_char_polys(Q))):
        assert poly_at_matrix(f, M).is_zero()
        expected = L.one()
        for p in pts:
            expected = expected * (lam - Fraction(p[i]))
        assert f == expected
