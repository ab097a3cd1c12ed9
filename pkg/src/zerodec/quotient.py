"""Multiplication matrices of K[x]/I and their characteristic polynomials.

Column ``j`` of the matrix for ``x_i`` holds the coordinates of the normal
form of ``x_i * b_j`` in the standard-monomial basis ``b_0 < b_1 < ...``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from zerodec.groebner import GroebnerBasis, normal_form, quotient_basis
from zerodec.linalg import DEFAULT_SYMBOLIC_CUTOFF, Matrix, char_poly_rat, char_poly_sym
from zerodec.polyring import Poly

#: Above this dimension the commutativity audit multiplies against a random
#: vector instead of forming full matrix products.
FULL_AUDIT_LIMIT = 24


class QuotientAuditError(AssertionError):
    pass


@dataclass(frozen=True)
class QuotientStructure:
    gb: GroebnerBasis
    basis: tuple[tuple, ...]
    matrices: tuple[Matrix, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def nvars(self) -> int:
        return len(self.matrices)

    def coordinates(self, f: Poly) -> list[Fraction]:
        """Coordinate vector of the class of ``f``."""
        nf = normal_form(f, self.gb)
        index = {m: k for k, m in enumerate(self.basis)}
        vec = [Fraction(0)] * len(self.basis)
        for m, c in nf.coeffs.items():
            vec[index[m]] = c
        return vec

    def matrix_of(self, f: Poly) -> Matrix:
        """Matrix of multiplication by ``f``, via substitution into the x_i matrices."""
        return poly_at_matrices(f, self.matrices)


def mult_matrices(G: GroebnerBasis, audit: bool = True) -> QuotientStructure:
    basis = tuple(quotient_basis(G))
    N = len(basis)
    n = G.ring.nvars
    index = {m: k for k, m in enumerate(basis)}
    ring = G.ring
    matrices = []
    for i in range(n):
        cols = []
        for b in basis:
            prod = b[:i] + (b[i] + 1,) + b[i + 1 :]
            col = [Fraction(0)] * N
            if prod in index:
                col[index[prod]] = Fraction(1)
            else:
                for m, c in normal_form(ring.monomial(prod), G).coeffs.items():
                    col[index[m]] = c
            cols.append(col)
        matrices.append(Matrix(list(zip(*cols))) if N else Matrix([]))
    Q = QuotientStructure(G, basis, tuple(matrices))
    if audit:
        audit_commutativity(Q)
    return Q


def audit_commutativity(Q: QuotientStructure, seed: int = 0) -> None:
    Ms = Q.matrices
    if Q.dimension <= FULL_AUDIT_LIMIT:
        for i in range(len(Ms)):
            for j in range(i + 1, len(Ms)):
                if Ms[i] @ Ms[j] != Ms[j] @ Ms[i]:
                    raise QuotientAuditError(f"multiplication matrices {i + 1} and {j + 1} do not commute")
        return
    rng = random.Random(seed)
    v = [Fraction(rng.randint(-9, 9)) for _ in range(Q.dimension)]
    images = [M.apply(v) for M in Ms]
    for i in range(len(Ms)):
        for j in range(i + 1, len(Ms)):
            if Ms[i].apply(images[j]) != Ms[j].apply(images[i]):
                raise QuotientAuditError(f"multiplication matrices {i + 1} and {j + 1} do not commute")


def poly_at_matrices(f: Poly, Ms: Iterable[Matrix]) -> Matrix:
    """f(M_1, ..., M_n) for pairwise commuting square matrices."""
    Ms = list(Ms)
    N = Ms[0].rows
    ident = Matrix.identity(N)
    powers: dict[tuple[int, int], Matrix] = {}

    def power(i: int, k: int) -> Matrix:
        if k == 0:
            return ident
        if (i, k) not in powers:
            powers[(i, k)] = power(i, k - 1) @ Ms[i]
        return powers[(i, k)]

    total = Matrix.zeros(N, N)
    for m, c in f.coeffs.items():
        term = ident
        for i, k in enumerate(m):
            if k:
                term = term @ power(i, k)
        total = total + term.scale(c)
    return total


def variable_char_polys(Q: QuotientStructure) -> list[Poly]:
    """Characteristic polynomial of each x_i multiplication matrix."""
    return [char_poly_rat(M) for M in Q.matrices]


def block_char_poly(Q: QuotientStructure, block: Iterable[int], cutoff: int | None = DEFAULT_SYMBOLIC_CUTOFF) -> Poly:
    """det(lambda*Id - sum_{i in block} t_i*M_i) in the ring (lambda, t_1..t_n)."""
    block = sorted(set(block))
    if not block:
        raise ValueError("empty block")
    if block[0] < 0 or block[-1] >= Q.nvars:
        raise ValueError(f"block {block} outside 0..{Q.nvars - 1}")
    return char_poly_sym([(i, Q.matrices[i]) for i in block], n=Q.nvars, cutoff=cutoff)
