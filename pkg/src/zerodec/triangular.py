"""Zero-dimensional triangular sets and their images under variable permutations.

Variables are ranked x_1 < x_2 < ... < x_n by declaration order; the main
variable of a polynomial is the highest-ranked variable it involves.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from zerodec.groebner import GroebnerBasis, buchberger, radical_membership
from zerodec.linalg import Matrix, bareiss_det
from zerodec.perm import Permutation, PermGroup
from zerodec.polyring import Poly, apply_perm_polys, format_poly

logger = logging.getLogger(__name__)


class ContainmentError(ValueError):
    pass


def main_variable(p: Poly) -> int | None:
    used = p.variables()
    return max(used) if used else None


@dataclass(frozen=True)
class TriangularSet:
    """``polys[i]`` has main variable x_i (0-based)."""

    polys: tuple[Poly, ...]

    @property
    def ring(self):
        return self.polys[0].ring

    def canonical(self) -> TriangularSet:
        return TriangularSet(tuple(p.primitive() for p in self.polys))

    def key(self) -> tuple[str, ...]:
        return tuple(format_poly(p) for p in self.canonical().polys)

    def __str__(self) -> str:
        return "[" + ", ".join(format_poly(p) for p in self.polys) + "]"


@dataclass(frozen=True)
class TriangularCheck:
    triangular: TriangularSet | None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.triangular is not None


def is_triangular(ps: Sequence[Poly]) -> TriangularCheck:
    """Sort by main variable and check the shape [f_1(x_1), f_2(x_1, x_2), ...]."""
    ps = list(ps)
    if not ps:
        return TriangularCheck(None, "empty set")
    n = ps[0].ring.nvars
    if len(ps) != n:
        return TriangularCheck(None, f"{len(ps)} polynomials for {n} variables")
    by_main: dict[int, Poly] = {}
    for p in ps:
        mv = main_variable(p)
        if mv is None:
            return TriangularCheck(None, f"constant polynomial {format_poly(p)}")
        if mv in by_main:
            return TriangularCheck(
                None, f"{format_poly(by_main[mv])} and {format_poly(p)} share main variable {p.ring.names[mv]}"
            )
        by_main[mv] = p
    return TriangularCheck(TriangularSet(tuple(by_main[i] for i in range(n))))


def sylvester_matrix(a: Poly, b: Poly, var: int) -> Matrix:
    """Sylvester matrix of ``a`` and ``b`` in the variable ``var``."""
    m, k = a.degree(var), b.degree(var)
    if m < 0 or k < 0:
        raise ValueError("resultant of the zero polynomial")
    ca = [a.coeff_in(var, d) for d in range(m, -1, -1)]
    cb = [b.coeff_in(var, d) for d in range(k, -1, -1)]
    zero = a.ring.zero()
    size = m + k
    rows = []
    for i in range(k):
        rows.append([zero] * i + ca + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + cb + [zero] * (size - k - 1 - i))
    return Matrix(rows)


def resultant(a: Poly, b: Poly, var: int) -> Poly:
    """Res_var(a, b) as a polynomial free of ``var``."""
    m, k = a.degree(var), b.degree(var)
    if a.is_zero() or b.is_zero():
        return a.ring.zero()
    if m == 0:
        return a**k
    if k == 0:
        return b**m
    return bareiss_det(sylvester_matrix(a, b, var))


def iterated_resultant(p: Poly, T: TriangularSet, upto: int) -> Poly:
    """Eliminate x_upto, ..., x_1 from ``p`` using f_upto, ..., f_1."""
    r = p
    for k in range(upto, -1, -1):
        if r.is_zero():
            break
        r = resultant(r, T.polys[k], k)
    return r


def is_regular(T: TriangularSet) -> bool:
    """Initials have non-zero iterated resultant against the lower part."""
    for j in range(1, len(T.polys)):
        lc = T.polys[j].lead_coeff_in(j)
        if iterated_resultant(lc, T, j - 1).is_zero():
            return False
    return True


def verify_containment(T: TriangularSet | Sequence[Poly], G: GroebnerBasis) -> bool:
    """Zero(T) inside Zero(G): every generator of G vanishes on Zero(T)."""
    polys = list(T.polys) if isinstance(T, TriangularSet) else list(T)
    GT = buchberger(polys, G.order)
    return all(radical_membership(g, GT) for g in G.generators)


@dataclass(frozen=True)
class OrbitEntry:
    sigma: Permutation
    triangular: TriangularSet
    verified: bool


def orbit_triangular(T: TriangularSet, group: PermGroup | Iterable[Permutation], G: GroebnerBasis) -> list[OrbitEntry]:
    """Triangular images psi_sigma(T), deduplicated, each checked against G.

    A failed containment check is logged as an error and kept in the output.
    """
    if not verify_containment(T, G):
        raise ContainmentError("input triangular set is not contained in the variety of the ideal")
    elements = group.elements if isinstance(group, PermGroup) else sorted(group)
    seen: set[tuple[str, ...]] = set()
    out = []
    for sigma in elements:
        check = is_triangular(apply_perm_polys(sigma, T.polys))
        if not check:
            continue
        image = check.triangular
        key = image.key()
        if key in seen:
            continue
        seen.add(key)
        ok = verify_containment(image, G)
        if not ok:
            logger.error(
                "psi_%s(T) = %s is triangular but NOT contained in Zero(I); "
                "sigma is presumably outside Dec(I)", sigma, image
            )
        out.append(OrbitEntry(sigma, image, ok))
    return out
