from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zerodec.linalg import (
    Matrix,
    SymbolicCutoffError,
    bareiss_det,
    char_poly_bareiss,
    char_poly_rat,
    char_poly_sym,
    min_poly,
    poly_at_matrix,
    symbolic_ring,
)
from zerodec.polyring import univar_divmod, univariate_ring

L = univariate_ring("lambda")


def test_char_poly_2x2_by_hand():
    # lambda^2 - trace*lambda + det
    M = Matrix.rational([[1, 2], [3, 4]])
    assert char_poly_rat(M) == L.parse("lambda^2 - 5*lambda - 2")


def test_bareiss_det_small():
    M = Matrix.rational([[2, 0, 1], [1, 3, 2], [1, 1, 1]])
    # cofactor expansion along the first row: 2*(3-2) - 0 + 1*(1-3)
    assert bareiss_det(M) == 0
    assert bareiss_det(Matrix.rational([[0, 1], [1, 0]])) == -1


def test_min_poly_of_diagonal_with_repeats():
    M = Matrix.rational([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert min_poly(M) == L.parse("lambda^2 - 3*lambda + 2")
    assert char_poly_rat(M) == L.parse("(lambda-1)^2*(lambda-2)")


def test_min_poly_of_jordan_block():
    J = Matrix.rational([[5, 1], [0, 5]])
    assert min_poly(J) == L.parse("(lambda-5)^2")


def test_char_poly_sym_two_commuting_diagonals():
    S = symbolic_ring(2)
    A = Matrix.rational([[1, 0], [0, 2]])
    B = Matrix.rational([[3, 0], [0, 4]])
    F = char_poly_sym([(0, A), (1, B)], n=2)
    assert F == S.parse("(lambda - t1 - 3*t2)*(lambda - 2*t1 - 4*t2)")


def test_char_poly_sym_cutoff():
    big = Matrix.identity(3)
    with pytest.raises(SymbolicCutoffError):
        char_poly_sym([(0, big)], n=1, cutoff=2)


def test_non_square_rejected():
    with pytest.raises(ValueError):
        char_poly_rat(Matrix.rational([[1, 2]]))


small = st.integers(-4, 4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix.rational)


sizes = st.integers(1, 5)


@settings(max_examples=40, deadline=None)
@given(sizes.flatmap(square))
def test_faddeev_leverrier_matches_bareiss(M):
    assert char_poly_rat(M) == char_poly_bareiss(M)


@settings(max_examples=40, deadline=None)
@given(sizes.flatmap(square))
def test_cayley_hamilton_and_min_poly_divides(M):
    f = char_poly_rat(M)
    assert poly_at_matrix(f, M).is_zero()
    m = min_poly(M)
    assert poly_at_matrix(m, M).is_zero()
    assert univar_divmod(f, m)[1].is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_similarity_invariance(pair):
    M, P = pair
    if bareiss_det(P) == 0:
        P = P + Matrix.identity(P.rows).scale(Fraction(17))
    if bareiss_det(P) == 0:
        return
    inv = _inverse(P)
    assert char_poly_rat(P @ M @ inv) == char_poly_rat(M)


def _inverse(P: Matrix) -> Matrix:
    # Gauss-Jordan, kept separate from the code under test
    n = P.rows
    a = [[Fraction(P[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        r = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[r] = a[r], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return Matrix([row[n:] for row in a])
