"""Reduced Groebner bases, normal forms and zero-dimensional ideal utilities.

Buchberger's algorithm runs on primitive integer polynomials (fraction-free
reduction) with the normal pair-selection strategy and the Gebauer-Moeller
update, which applies Buchberger's coprime and chain criteria.  Results are
returned as monic rational polynomials sorted ascending by leading monomial.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import logging
import math
import time
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from zerodec.polyring import MonomialOrder, Poly, PolyRing, format_poly, parse_poly, squarefree_part, to_dense

logger = logging.getLogger(__name__)


class NotZeroDimensionalError(ValueError):
    pass


class EmptyVarietyError(ValueError):
    """The ideal is the whole ring, so its variety is empty."""


class GroebnerTimeout(TimeoutError):
    def __init__(self, pairs_processed: int, basis_size: int, pairs_left: int):
        super().__init__(
            f"Groebner basis computation timed out after {pairs_processed} pairs "
            f"(basis size {basis_size}, {pairs_left} pairs pending)"
        )
        self.pairs_processed = pairs_processed
        self.basis_size = basis_size
        self.pairs_left = pairs_left


class DuplicatePointError(ValueError):
    pass


# -- integer polynomial kernel ------------------------------------------------
#
# An internal polynomial is a dict {monomial: int}.  A basis element is stored
# as a tuple (lead, lead_coeff, tail) where tail lists the remaining terms.


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _primitive_int(coeffs: dict) -> dict:
    """Clear denominators and content; sign is fixed later by the leader."""
    den = math.lcm(*(Fraction(c).denominator for c in coeffs.values()))
    ints = {m: int(Fraction(c) * den) for m, c in coeffs.items()}
    g = math.gcd(*ints.values())
    if g > 1:
        ints = {m: c // g for m, c in ints.items()}
    return ints


class _Reducer:
    """Reduction of integer polynomials against a list of basis elements."""

    def __init__(self, key):
        self.key = key
        self._neg: dict = {}

    def negkey(self, m: tuple) -> tuple:
        k = self._neg.get(m)
        if k is None:
            k = tuple(-x for x in self.key(m))
            self._neg[m] = k
        return k

    def lead(self, p: dict) -> tuple:
        return max(p, key=self.key)

    def element(self, p: dict) -> tuple:
        key = self.key
        terms = sorted(p.items(), key=lambda t: key(t[0]), reverse=True)
        lead, lc = terms[0]
        if lc < 0:
            terms = [(m, -c) for m, c in terms]
            lead, lc = terms[0]
        return lead, lc, tuple(terms[1:])

    def reduce(self, p: dict, basis: Sequence[tuple]) -> tuple[dict, int]:
        """Full reduction.  Returns (r, s) with r = s*p - (combination of basis)."""
        p = dict(p)
        heap = [(self.negkey(m), m) for m in p]
        heapq.heapify(heap)
        rem: dict = {}
        scale = 1
        leads = [(b[0], b) for b in basis]
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            div = None
            for lm, b in leads:
                if _divides(lm, m):
                    div = b
                    break
            if div is None:
                rem[m] = c
                continue
            lm, lc, tail = div
            g = math.gcd(c, lc)
            a, f = lc // g, c // g
            if a != 1:
                scale *= a
                for k in p:
                    p[k] *= a
                for k in rem:
                    rem[k] *= a
            shift = tuple(x - y for x, y in zip(m, lm))
            for tm, tc in tail:
                mm = tuple(x + y for x, y in zip(tm, shift))
                old = p.get(mm)
                if old is None:
                    p[mm] = -f * tc
                    heapq.heappush(heap, (self.negkey(mm), mm))
                else:
                    v = old - f * tc
                    if v:
                        p[mm] = v
                    else:
                        del p[mm]
        return rem, scale

    def spoly(self, bi: tuple, bj: tuple) -> dict:
        li, ci, ti = bi
        lj, cj, tj = bj
        lcm = _lcm(li, lj)
        g = math.gcd(ci, cj)
        ai, aj = cj // g, ci // g
        si = tuple(x - y for x, y in zip(lcm, li))
        sj = tuple(x - y for x, y in zip(lcm, lj))
        out: dict = {}
        for tm, tc in ti:
            mm = tuple(x + y for x, y in zip(tm, si))
            out[mm] = out.get(mm, 0) + ai * tc
        for tm, tc in tj:
            mm = tuple(x + y for x, y in zip(tm, sj))
            v = out.get(mm, 0) - aj * tc
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return out


def _content_free(p: dict) -> dict:
    g = math.gcd(*p.values())
    return {m: c // g for m, c in p.items()} if g > 1 else p


# -- public types --------------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis: monic generators sorted by leading monomial."""

    __slots__ = ("ring", "generators", "_elements", "_reducer")

    def __init__(self, ring: PolyRing, generators: Iterable[Poly]):
        self.ring = ring
        key = ring.key
        gens = [g.with_order(ring.order) if g.ring != ring else g for g in generators]
        self.generators = tuple(sorted(gens, key=lambda g: key(g.lead_monomial)))
        self._reducer = _Reducer(key)
        self._elements = [self._reducer.element(_primitive_int(g.coeffs)) for g in self.generators]

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.lead_monomial for g in self.generators]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring.names == other.ring.names
            and self.ring.order == other.ring.order
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.generators))

    def __repr__(self) -> str:
        return "GroebnerBasis([" + ", ".join(format_poly(g) for g in self.generators) + "])"

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def reduces_to_zero(self, f: Poly) -> bool:
        """Membership test; skips the final rescaling of normal_form."""
        if f.ring.names != self.ring.names:
            raise ValueError("ring mismatch between polynomial and basis")
        if f.is_zero():
            return True
        rem, _ = self._reducer.reduce(_primitive_int(f.coeffs), self._elements)
        return not rem

    def contains(self, f: Poly) -> bool:
        return self.reduces_to_zero(f)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    """Unique remainder of ``f`` modulo the reduced basis ``G``."""
    if f.ring.names != G.ring.names:
        raise ValueError("ring mismatch between polynomial and basis")
    if f.is_zero():
        return Poly(G.ring)
    den = math.lcm(*(c.denominator for c in f.coeffs.values()))
    ints = {m: int(c * den) for m, c in f.coeffs.items()}
    rem, scale = G._reducer.reduce(ints, G._elements)
    factor = Fraction(1, den * scale)
    return Poly(G.ring, {m: c * factor for m, c in rem.items()})


def buchberger(
    ps: Sequence[Poly],
    order: MonomialOrder | None = None,
    deadline: float | None = None,
    stats: dict | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``ps``.

    ``deadline`` is a :func:`time.monotonic` timestamp; passing it makes the
    main loop abort with :class:`GroebnerTimeout` once exceeded.
    """
    if not ps:
        raise ValueError("buchberger needs at least one polynomial")
    names = ps[0].ring.names
    if any(p.ring.names != names for p in ps):
        raise ValueError("polynomials live in different rings")
    ring = PolyRing(names, order) if order is not None else ps[0].ring
    key = ring.key
    red = _Reducer(key)

    basis: list[tuple] = []  # every element ever added; indices are stable
    active: list[bool] = []
    pairs: dict[tuple[int, int], tuple] = {}  # (i, j) -> lcm
    processed = 0

    def select_key(item):
        (i, j), lcm = item
        return (sum(lcm), key(lcm), i, j)

    def add(p: dict) -> bool:
        """Insert a reduced non-zero polynomial; True if it is a unit."""
        h = red.element(_content_free(p))
        lh = h[0]
        if not any(lh):
            return True
        k = len(basis)
        basis.append(h)
        active.append(True)
        # Gebauer-Moeller update
        cand = [(i, _lcm(basis[i][0], lh)) for i in range(k) if active[i]]
        kept = []
        for idx, (i, lcm) in enumerate(cand):
            if _coprime(basis[i][0], lh):
                kept.append((i, lcm, True))
                continue
            others = cand[idx + 1 :]
            if any(_divides(l2, lcm) for _, l2 in others) or any(_divides(l2, lcm) for _, l2, _ in kept):
                continue
            kept.append((i, lcm, False))
        for (i, j), lcm in list(pairs.items()):
            if _divides(lh, lcm) and _lcm(basis[i][0], lh) != lcm and _lcm(basis[j][0], lh) != lcm:
                del pairs[(i, j)]
        for i, lcm, coprime in kept:
            if not coprime:
                pairs[(i, k)] = lcm
        for i in range(k):
            if active[i] and _divides(lh, basis[i][0]):
                active[i] = False
        return False

    def current() -> list[tuple]:
        return [b for b, a in zip(basis, active) if a]

    unit = False
    for p in ps:
        if p.is_zero():
            continue
        r, _ = red.reduce(_primitive_int(p.coeffs), current())
        if r and add(r):
            unit = True
            break

    while pairs and not unit:
        if deadline is not None and time.monotonic() > deadline:
            raise GroebnerTimeout(processed, sum(active), len(pairs))
        (i, j), _ = min(pairs.items(), key=select_key)
        del pairs[(i, j)]
        processed += 1
        s = red.spoly(basis[i], basis[j])
        if not s:
            continue
        r, _ = red.reduce(s, current())
        if r and add(r):
            unit = True

    if stats is not None:
        stats.update(pairs_processed=processed, elements_added=len(basis))

    if unit:
        return GroebnerBasis(ring, [ring.one()])
    if not basis:
        return GroebnerBasis(ring, [])

    # minimal basis, then inter-reduction of tails
    gens = current()
    gens = [
        g for idx, g in enumerate(gens)
        if not any(_divides(h[0], g[0]) and (h[0] != g[0] or jdx < idx) for jdx, h in enumerate(gens) if jdx != idx)
    ]
    reduced = []
    for idx, g in enumerate(gens):
        others = gens[:idx] + gens[idx + 1 :]
        tail = dict(g[2])
        r, scale = red.reduce(tail, others) if tail else ({}, 1)
        lead, lc = g[0], g[1]
        coeffs = {lead: Fraction(1)}
        for m, c in r.items():
            coeffs[m] = Fraction(c, lc * scale)
        reduced.append(Poly(ring, coeffs))
    return GroebnerBasis(ring, reduced)


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    if G.is_unit():
        raise EmptyVarietyError("the ideal is <1>; its variety is empty")
    n = G.ring.nvars
    found = set()
    for m in G.leading_monomials:
        used = [i for i, e in enumerate(m) if e]
        if len(used) == 1:
            found.add(used[0])
    return len(found) == n


def _require_zero_dim(G: GroebnerBasis) -> None:
    if not is_zero_dimensional(G):
        raise NotZeroDimensionalError("ideal is not zero-dimensional")


def quotient_basis(G: GroebnerBasis) -> list[tuple]:
    """Standard monomials of a zero-dimensional ideal, ascending under G's order."""
    _require_zero_dim(G)
    n = G.ring.nvars
    leads = G.leading_monomials
    one = (0,) * n
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                mm = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if mm in seen or any(_divides(l, mm) for l in leads):
                    continue
                seen.add(mm)
                nxt.append(mm)
        frontier = nxt
    return sorted(seen, key=G.ring.key)


def radicalize(G: GroebnerBasis) -> GroebnerBasis:
    """Reduced basis of the radical: adjoin squarefree parts of the minimal polynomials.

    Returns ``G`` itself when every minimal polynomial is already squarefree.
    """
    from zerodec.linalg import min_poly
    from zerodec.quotient import mult_matrices

    _require_zero_dim(G)
    Q = mult_matrices(G)
    extra = []
    for i, M in enumerate(Q.matrices):
        p = min_poly(M)
        sq = squarefree_part(p)
        if sq != p:
            coeffs = to_dense(sq, 0)
            x = G.ring.gen(i)
            extra.append(sum((x**k * c for k, c in enumerate(coeffs) if c), G.ring.zero()))
    if not extra:
        return G
    return buchberger(list(G.generators) + extra)


def is_radical(G: GroebnerBasis) -> bool:
    return radicalize(G) is G


def radical_membership(f: Poly, G: GroebnerBasis) -> bool:
    """Does ``f`` vanish on the variety of G?  Uses the Rabinowitsch trick."""
    if G.reduces_to_zero(f):
        return True
    names = G.ring.names
    z = "_z"
    while z in names:
        z += "_"
    ring = PolyRing(names + (z,), MonomialOrder(G.order.kind))
    idx = range(len(names))
    gens = [g.to_ring(ring, idx) for g in G.generators]
    zf = ring.gen(len(names)) * f.to_ring(ring, idx)
    return buchberger(gens + [ring.one() - zf]).is_unit()


def ideal_of_points(points: Sequence[Sequence], ring: PolyRing) -> GroebnerBasis:
    """Buchberger-Moeller: reduced basis of the vanishing ideal of ``points``."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    n = ring.nvars
    if any(len(p) != n for p in pts):
        raise ValueError(f"all points must have {n} coordinates")
    if len(set(pts)) != len(pts):
        raise DuplicatePointError("duplicate points")
    if not pts:
        return GroebnerBasis(ring, [ring.one()])
    key = ring.key
    one = (0,) * n
    heap = [(key(one), one)]
    queued = {one}
    rows: list[tuple[int, list, dict]] = []  # (pivot, normalised vector, combination)
    leads: list[tuple] = []
    gens: list[Poly] = []
    while heap:
        _, t = heapq.heappop(heap)
        if any(_divides(l, t) for l in leads):
            continue
        vec = [_eval_monomial(t, p) for p in pts]
        combo = {t: Fraction(1)}
        for pivot, row, rc in rows:
            f = vec[pivot]
            if f:
                for j in range(len(vec)):
                    if row[j]:
                        vec[j] -= f * row[j]
                for m, c in rc.items():
                    v = combo.get(m, 0) - f * c
                    if v:
                        combo[m] = v
                    else:
                        combo.pop(m, None)
        pivot = next((j for j, x in enumerate(vec) if x), None)
        if pivot is None:
            leads.append(t)
            gens.append(Poly(ring, combo))
            continue
        inv = 1 / vec[pivot]
        rows.append((pivot, [x * inv for x in vec], {m: c * inv for m, c in combo.items()}))
        for i in range(n):
            mm = t[:i] + (t[i] + 1,) + t[i + 1 :]
            if mm not in queued:
                queued.add(mm)
                heapq.heappush(heap, (key(mm), mm))
    # gens are monic with standard-monomial tails, hence already reduced
    return GroebnerBasis(ring, gens)


def _eval_monomial(m: tuple, point: tuple) -> Fraction:
    v = Fraction(1)
    for x, k in zip(point, m):
        if k:
            v *= x**k
    return v


# -- on-disk cache ---------------------------------------------------------------


def _order_tag(order: MonomialOrder) -> str:
    return order.kind if order.ranking is None else f"{order.kind}:{','.join(map(str, order.ranking))}"


def system_hash(ps: Sequence[Poly], order: MonomialOrder) -> str:
    names = ps[0].ring.names
    body = json.dumps(
        {"vars": list(names), "order": _order_tag(order), "polys": sorted(format_poly(p) for p in ps)},
        sort_keys=True,
    )
    return hashlib.sha256(body.encode()).hexdigest()


def basis_to_json(G: GroebnerBasis) -> dict:
    return {
        "vars": list(G.ring.names),
        "order": G.order.kind,
        "ranking": list(G.order.ranking) if G.order.ranking is not None else None,
        "generators": [format_poly(g) for g in G.generators],
    }


def basis_from_json(data: dict) -> GroebnerBasis:
    ranking = tuple(data["ranking"]) if data.get("ranking") is not None else None
    ring = PolyRing(tuple(data["vars"]), MonomialOrder(data["order"], ranking))
    return GroebnerBasis(ring, [parse_poly(text, ring) for text in data["generators"]])


def cached_buchberger(
    ps: Sequence[Poly],
    cache_dir: str | Path | None,
    order: MonomialOrder | None = None,
    deadline: float | None = None,
) -> GroebnerBasis:
    """:func:`buchberger`, persisted under ``cache_dir`` keyed by system and order."""
    order = order or ps[0].ring.order
    if cache_dir is None:
        return buchberger(ps, order, deadline)
    path = Path(cache_dir) / f"gb-{system_hash(ps, order)}.json"
    if path.exists():
        logger.info("loading cached Groebner basis from %s", path)
        return basis_from_json(json.loads(path.read_text()))
    G = buchberger(ps, order, deadline)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(basis_to_json(G), indent=1))
    tmp.replace(path)
    return G
