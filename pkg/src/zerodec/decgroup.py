"""Decomposition groups of zero-dimensional ideals.

The pipeline: reduced Groebner basis, multiplication matrices, their
characteristic polynomials, the variable partition they induce, and for each
block the symmetry group of the block characteristic polynomial
``det(lambda*Id - sum t_i*M_i)``.  The direct product of those groups is an
over-approximation; every element is then confirmed against the definition
(``psi_sigma(g)`` reduces to zero for every basis element ``g``).
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from zerodec.groebner import (
    DuplicatePointError,
    EmptyVarietyError,
    GroebnerBasis,
    NotZeroDimensionalError,
    buchberger,
    is_zero_dimensional,
    radicalize,
)
from zerodec.linalg import DEFAULT_SYMBOLIC_CUTOFF
from zerodec.perm import (
    DEFAULT_ENUMERATION_CAP,
    Permutation,
    PermGroup,
    PermutationError,
    describe,
    direct_product_on_blocks,
    symmetric_group_on,
)
from zerodec.polyring import Poly, format_poly
from zerodec.quotient import block_char_poly, mult_matrices, variable_char_polys

logger = logging.getLogger(__name__)


class NotRadicalError(ValueError):
    pass


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True)
class VariablePartition:
    """Disjoint 0-based index blocks, each sorted, ordered by smallest member."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, labels: Sequence) -> VariablePartition:
        """Group indices whose labels compare equal."""
        groups: list[tuple[object, list[int]]] = []
        for i, lab in enumerate(labels):
            for key, members in groups:
                if key == lab:
                    members.append(i)
                    break
            else:
                groups.append((lab, [i]))
        return cls(tuple(tuple(m) for _, m in groups))

    def one_based(self) -> list[list[int]]:
        return [[i + 1 for i in b] for b in self.blocks]

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(str(i + 1) for i in b) + "}" for b in self.blocks) + "}"

    def preserves(self, sigma: Permutation) -> bool:
        return all({sigma(i) for i in b} == set(b) for b in self.blocks)


@dataclass
class DecOptions:
    radical: str = "auto"  # auto | strict | off
    cutoff: int = DEFAULT_SYMBOLIC_CUTOFF
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    cross_check: bool = False
    deadline: float | None = None

    def __post_init__(self):
        if self.radical not in ("auto", "strict", "off"):
            raise ValueError(f"radical policy must be auto, strict or off, not {self.radical!r}")
        if self.cutoff < 1:
            raise ValueError("cutoff must be positive")


@dataclass
class DecResult:
    variables: tuple[str, ...]
    partition: VariablePartition
    block_sym_groups: list[PermGroup]
    candidate_group: PermGroup
    dec_group: PermGroup
    strategy: str
    radicalized: bool = False
    gb: GroebnerBasis | None = None
    quotient_dimension: int | None = None
    char_polys: list[Poly] | None = None
    block_char_polys: list[Poly] | None = None
    coordinate_sets: list[list[Fraction]] | None = None
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def gap(self) -> bool:
        return self.dec_group.order < self.candidate_group.order

    def to_dict(self, include_gb: bool = False) -> dict:
        out: dict = {
            "variables": list(self.variables),
            "strategy": self.strategy,
            "radicalized": self.radicalized,
            "quotient_dimension": self.quotient_dimension,
            "partition": self.partition.one_based(),
        }
        if self.coordinate_sets is not None:
            out["coordinate_sets"] = [[_fmt_q(x) for x in s] for s in self.coordinate_sets]
        if self.char_polys is not None:
            out["char_polys"] = [format_poly(f) for f in self.char_polys]
        blocks = []
        for k, (b, g) in enumerate(zip(self.partition.blocks, self.block_sym_groups)):
            entry = {"block": [i + 1 for i in b], "sym_order": g.order,
                     "sym_generators": [str(s) for s in g.generators()]}
            if self.block_char_polys is not None:
                entry["block_char_poly"] = format_poly(self.block_char_polys[k])
            blocks.append(entry)
        out["blocks"] = blocks
        out["candidate"] = describe(self.candidate_group)
        out["dec"] = describe(self.dec_group)
        out["dec"]["elements"] = [str(s) for s in self.dec_group.elements]
        out["gap"] = self.gap
        if include_gb and self.gb is not None:
            out["groebner_basis"] = [format_poly(g) for g in self.gb.generators]
        out["warnings"] = list(self.warnings)
        out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def partition_variables(fs: Sequence[Poly], n: int | None = None) -> VariablePartition:
    """Group variable indices whose characteristic polynomials are equal."""
    if n is not None and len(fs) != n:
        raise ValueError(f"expected {n} characteristic polynomials, got {len(fs)}")
    return VariablePartition.from_labels(list(fs))


def sym_group(F: Poly, block: Sequence[int], n: int | None = None, cap: int = DEFAULT_ENUMERATION_CAP) -> PermGroup:
    """Permutations of ``block`` fixing the rest under which ``F`` is invariant.

    The permuted variables are the last ``n`` variables of F's ring (all of
    them by default), so a polynomial in (lambda, t_1..t_n) is handled with
    ``n = nvars - 1``.
    """
    nv = F.ring.nvars
    n = nv if n is None else n
    offset = nv - n
    block = sorted(set(block))
    if any(not 0 <= i < n for i in block):
        raise ValueError(f"block {block} outside 0..{n - 1}")
    if len(block) > cap:
        raise EnumerationCapError(f"block of size {len(block)} exceeds enumeration cap {cap}")
    outside = set(range(n)) - set(block)
    for m in F.coeffs:
        if any(m[offset + i] for i in outside):
            raise ValueError("polynomial involves tag variables outside the block")
    coeffs = F.coeffs
    items = list(coeffs.items())
    members = []
    for perm in itertools.permutations(block):
        images = list(range(n))
        for src, dst in zip(block, perm):
            images[src] = dst
        full = list(range(offset)) + [offset + j for j in images]
        ok = True
        for m, c in items:
            e = [0] * nv
            for i, k in enumerate(m):
                e[full[i]] = k
            if coeffs.get(tuple(e)) != c:
                ok = False
                break
        if ok:
            members.append(Permutation(tuple(images)))
    return PermGroup(n, members)


def dec_oracle_member(sigma: Permutation, G: GroebnerBasis) -> bool:
    """True iff psi_sigma maps every basis element of G into the ideal."""
    if sigma.degree != G.ring.nvars:
        raise PermutationError(f"permutation degree {sigma.degree} differs from {G.ring.nvars} variables")
    return all(G.reduces_to_zero(g.permute(sigma)) for g in G.generators)


def _block_preserving(n: int, partition: VariablePartition, cap: int) -> PermGroup:
    factors = []
    for b in partition.blocks:
        if len(b) > cap:
            raise EnumerationCapError(f"block of size {len(b)} exceeds enumeration cap {cap}")
        factors.append((b, symmetric_group_on(b, n, cap)))
    return direct_product_on_blocks(n, factors)


def _filter(candidate: PermGroup, G: GroebnerBasis) -> PermGroup:
    return PermGroup(candidate.degree, [s for s in candidate.elements if dec_oracle_member(s, G)])


def dec_group(ps: Sequence[Poly] | GroebnerBasis, options: DecOptions | None = None) -> DecResult:
    """Decomposition group of the ideal generated by ``ps`` (or of a basis)."""
    options = options or DecOptions()
    timings: dict[str, float] = {}
    warnings: list[str] = []
    if isinstance(ps, GroebnerBasis):
        G = ps
    else:
        if not ps:
            raise ValueError("empty polynomial system")
        t0 = time.perf_counter()
        G = buchberger(list(ps), deadline=options.deadline)
        timings["groebner"] = time.perf_counter() - t0
    ring = G.ring
    n = ring.nvars

    if G.is_unit():
        if n > options.enumeration_cap:
            raise EnumerationCapError(f"S_{n} exceeds enumeration cap {options.enumeration_cap}")
        msg = "the ideal is <1> (empty variety); every permutation fixes it"
        logger.warning(msg)
        full = symmetric_group_on(range(n), n, options.enumeration_cap)
        part = VariablePartition((tuple(range(n)),))
        return DecResult(ring.names, part, [full], full, full, "empty-variety", gb=G,
                         quotient_dimension=0, warnings=[msg], timings=timings)
    if not is_zero_dimensional(G):
        raise NotZeroDimensionalError("ideal is not zero-dimensional")

    radicalized = False
    if options.radical != "off":
        t = time.perf_counter()
        R = radicalize(G)
        timings["radicalize"] = time.perf_counter() - t
        if R is not G:
            if options.radical == "strict":
                raise NotRadicalError("ideal is not radical (strict mode)")
            warnings.append("input ideal was not radical; computed Dec of its radical")
            G, radicalized = R, True

    t = time.perf_counter()
    Q = mult_matrices(G)
    fs = variable_char_polys(Q)
    timings["char_polys"] = time.perf_counter() - t
    partition = partition_variables(fs, n)
    for b in partition.blocks:
        if len(b) > options.enumeration_cap:
            raise EnumerationCapError(
                f"block {[i + 1 for i in b]} exceeds enumeration cap {options.enumeration_cap}"
            )

    t = time.perf_counter()
    block_polys = None
    if Q.dimension <= options.cutoff:
        strategy = "symbolic"
        block_polys = [block_char_poly(Q, b, cutoff=options.cutoff) for b in partition.blocks]
        syms = [sym_group(F, b, n, options.enumeration_cap) for F, b in zip(block_polys, partition.blocks)]
        candidate = direct_product_on_blocks(n, list(zip(partition.blocks, syms)))
    else:
        strategy = "oracle-only"
        syms = [symmetric_group_on(b, n, options.enumeration_cap) for b in partition.blocks]
        candidate = direct_product_on_blocks(n, list(zip(partition.blocks, syms)))
    timings["candidates"] = time.perf_counter() - t

    t = time.perf_counter()
    dec = _filter(candidate, G)
    timings["oracle"] = time.perf_counter() - t
    dec.audit()

    if options.cross_check and strategy == "symbolic":
        other = _filter(_block_preserving(n, partition, options.enumeration_cap), G)
        if other != dec:
            raise AssertionError("symbolic and oracle-only strategies disagree")

    if dec.order < candidate.order:
        warnings.append(
            f"candidate group (order {candidate.order}) strictly contains the confirmed "
            f"decomposition group (order {dec.order})"
        )
    return DecResult(
        variables=ring.names,
        partition=partition,
        block_sym_groups=syms,
        candidate_group=candidate,
        dec_group=dec,
        strategy=strategy,
        radicalized=radicalized,
        gb=G,
        quotient_dimension=Q.dimension,
        char_polys=fs,
        block_char_polys=block_polys,
        warnings=warnings,
        timings=timings,
    )


def _check_points(points: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("no points given")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points have different numbers of coordinates")
    if len(set(pts)) != len(pts):
        raise DuplicatePointError("duplicate points")
    return pts


def coordinate_sets(points: Sequence[Sequence]) -> list[frozenset[Fraction]]:
    pts = _check_points(points)
    return [frozenset(p[i] for p in pts) for i in range(len(pts[0]))]


def partition_from_points(points: Sequence[Sequence]) -> VariablePartition:
    """Indices grouped by equality of their coordinate value sets."""
    return VariablePartition.from_labels(coordinate_sets(points))


def permute_point(sigma: Permutation, point: Sequence) -> tuple:
    """(a_sigma(1), ..., a_sigma(n))."""
    return tuple(point[sigma(i)] for i in range(len(point)))


def dec_from_points(
    points: Sequence[Sequence],
    variables: Sequence[str] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> DecResult:
    """Decomposition group read directly off an explicit zero set."""
    pts = _check_points(points)
    n = len(pts[0])
    sets = coordinate_sets(pts)
    partition = VariablePartition.from_labels(sets)
    candidate = _block_preserving(n, partition, cap)
    syms = [symmetric_group_on(b, n, cap) for b in partition.blocks]
    pset = set(pts)
    dec = PermGroup(n, [s for s in candidate.elements if all(permute_point(s, p) in pset for p in pts)])
    warnings = []
    if dec.order < candidate.order:
        warnings.append(
            f"block-preserving group (order {candidate.order}) strictly contains the "
            f"decomposition group (order {dec.order})"
        )
    names = tuple(variables) if variables is not None else tuple(f"x{i + 1}" for i in range(n))
    return DecResult(
        variables=names,
        partition=partition,
        block_sym_groups=syms,
        candidate_group=candidate,
        dec_group=dec,
        strategy="points",
        quotient_dimension=len(pts),
        coordinate_sets=[sorted(s) for s in sets],
        warnings=warnings,
    )
