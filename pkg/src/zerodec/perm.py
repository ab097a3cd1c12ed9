"""Permutations of {1..n} and explicitly enumerated permutation groups.

Permutations are stored 0-based (``images[i]`` is the image of ``i``) and
printed 1-based in cycle notation, e.g. ``(1 2)(3 4)``; the identity prints
as ``()``.  Composition is right-to-left: ``(s * t)(i) == s(t(i))``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

#: Largest degree for which a full symmetric group may be enumerated.
DEFAULT_ENUMERATION_CAP = 10


class PermutationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise PermutationError(f"not a bijection of 0..{len(self.images) - 1}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        """Build from 1-based cycles; points not mentioned are fixed."""
        images = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [c - 1 for c in cyc]
            for c in cyc:
                if not 0 <= c < n:
                    raise PermutationError(f"point {c + 1} outside 1..{n}")
                if c in seen:
                    raise PermutationError(f"point {c + 1} repeated in cycle notation")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> Permutation:
        """Parse cycle notation such as ``(1 2)(3 4 5)`` or ``()``."""
        stripped = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\))+", stripped):
            raise PermutationError(f"malformed cycle notation: {text!r}")
        cycles = [
            [int(tok) for tok in re.findall(r"\d+", body)]
            for body in re.findall(r"\(([^)]*)\)", stripped)
        ]
        return cls.from_cycles([c for c in cycles if c], n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise PermutationError("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.images) if i != j)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(c + 1) for c in cyc) + ")" for cyc in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def parse_generators(text: str, n: int) -> list[Permutation]:
    """Parse a comma-separated generator list, e.g. ``"(1 2),(1 2 3 4 5)"``."""
    parts = re.findall(r"\([^)]*\)(?:\s*\([^)]*\))*", text)
    if not parts and text.strip():
        raise PermutationError(f"malformed generator list: {text!r}")
    return [Permutation.parse(p, n) for p in parts]


class PermGroup:
    """A permutation group stored as its full, sorted element list.

    The constructor audits the group axioms; use :func:`group_closure` to
    build a group from generators.
    """

    __slots__ = ("degree", "elements", "_index")

    def __init__(self, degree: int, elements: Iterable[Permutation], check: bool = True):
        self.degree = degree
        self.elements = tuple(sorted(set(elements)))
        self._index = frozenset(self.elements)
        if check:
            self.audit()

    def audit(self) -> None:
        """Raise if the element list is not a group of the stated degree."""
        if any(g.degree != self.degree for g in self.elements):
            raise PermutationError("element degree mismatch")
        if Permutation.identity(self.degree) not in self._index:
            raise PermutationError("group lacks the identity")
        for g in self.elements:
            if g.inverse() not in self._index:
                raise PermutationError(f"group not closed under inverse at {g}")
            for h in self.elements:
                if g * h not in self._index:
                    raise PermutationError(f"group not closed: {g} * {h}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self._index == other._index

    def __hash__(self) -> int:
        return hash((self.degree, self._index))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and self._index <= other._index

    def support(self) -> frozenset[int]:
        pts: set[int] = set()
        for g in self.elements:
            pts |= g.support()
        return frozenset(pts)

    def conjugate(self, tau: Permutation) -> PermGroup:
        """The group tau * G * tau^-1."""
        tinv = tau.inverse()
        return PermGroup(self.degree, (tau * g * tinv for g in self.elements), check=False)

    def generators(self) -> list[Permutation]:
        """A small generating set, chosen greedily in element order."""
        gens: list[Permutation] = []
        span: frozenset[Permutation] = frozenset([Permutation.identity(self.degree)])
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = frozenset(_closure_elements(gens, self.degree))
                if len(span) == self.order:
                    break
        return gens


def _closure_elements(gens: Sequence[Permutation], n: int) -> set[Permutation]:
    ident = Permutation.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s * g
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return seen


def group_closure(gens: Iterable[Permutation], n: int) -> PermGroup:
    """Smallest group containing ``gens`` (breadth-first closure)."""
    gens = list(gens)
    for g in gens:
        if g.degree != n:
            raise PermutationError(f"generator {g} has degree {g.degree}, expected {n}")
    return PermGroup(n, _closure_elements(gens, n), check=False)


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, [Permutation.identity(n)], check=False)


def symmetric_group_on(block: Iterable[int], n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> PermGroup:
    """All permutations of ``block`` (0-based points) fixing everything else."""
    block = sorted(block)
    if len(block) > cap:
        raise PermutationError(f"refusing to enumerate S_{len(block)} (cap {cap})")
    elems = []
    for perm in itertools.permutations(block):
        images = list(range(n))
        for src, dst in zip(block, perm):
            images[src] = dst
        elems.append(Permutation(tuple(images)))
    return PermGroup(n, elems, check=False)


def direct_product_on_blocks(n: int, factors: Sequence[tuple[Iterable[int], PermGroup]]) -> PermGroup:
    """Internal direct product of groups acting on pairwise disjoint blocks."""
    used: set[int] = set()
    groups = []
    for block, group in factors:
        block = set(block)
        if block & used:
            raise PermutationError(f"overlapping blocks at {sorted(block & used)}")
        if not block <= set(range(n)):
            raise PermutationError("block outside 0..n-1")
        if group.degree != n:
            raise PermutationError("factor degree mismatch")
        if not group.support() <= block:
            raise PermutationError(f"factor moves points outside its block {sorted(block)}")
        used |= block
        groups.append(group.elements)
    elems = []
    for combo in itertools.product(*groups):
        g = Permutation.identity(n)
        for h in combo:
            g = g * h
        elems.append(g)
    return PermGroup(n, elems, check=False)


def is_conjugate(g: PermGroup, h: PermGroup, cap: int = 8) -> bool:
    """Brute-force test for conjugacy of ``g`` and ``h`` inside S_n."""
    if g.degree != h.degree or g.order != h.order:
        return False
    if g.degree > cap:
        raise PermutationError(f"conjugacy search over S_{g.degree} exceeds cap {cap}")
    for images in itertools.permutations(range(g.degree)):
        if g.conjugate(Permutation(images)) == h:
            return True
    return False


def _dihedral_4(points: Sequence[int], n: int) -> PermGroup:
    a, b, c, d = points
    rot = Permutation.from_cycles([(a + 1, b + 1, c + 1, d + 1)], n)
    flip = Permutation.from_cycles([(a + 1, c + 1)], n)
    return group_closure([rot, flip], n)


def name_tag(g: PermGroup) -> str | None:
    """A name when the group provably equals a recognised group, else None."""
    if g.order == 1:
        return "trivial"
    supp = sorted(g.support())
    k = len(supp)
    if g.order == math.factorial(k):
        # a subgroup of Sym(supp) with full order is Sym(supp)
        if k == g.degree:
            return f"S_{k}"
        return f"S_{k} on {{{', '.join(str(i + 1) for i in supp)}}}"
    if k == 4 and g.order == 8:
        # restrict to the four moved points and compare with the square's symmetries
        local = PermGroup(
            4, (Permutation(tuple(supp.index(e(p)) for p in supp)) for e in g.elements), check=False
        )
        if is_conjugate(local, _dihedral_4(range(4), 4)):
            return "D_4 (dihedral on 4 points)"
    if k > 2 and g.order == 2 * k and _is_prime(k) and any(e.order() == k for e in g.elements):
        # for prime k the normaliser of a k-cycle is AGL(1, k), whose only
        # subgroup of order 2k containing the cycle is dihedral
        return f"D_{k} (dihedral on {k} points)"
    return None


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, math.isqrt(k) + 1))


def describe(g: PermGroup) -> dict:
    """Deterministic summary: order, generators in cycle notation, name tag."""
    return {
        "order": g.order,
        "generators": [str(s) for s in g.generators()],
        "tag": name_tag(g),
    }
