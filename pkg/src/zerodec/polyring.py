"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`PolyRing` fixes the variable names and a :class:`MonomialOrder`;
a :class:`Poly` maps exponent tuples to :class:`fractions.Fraction`
coefficients.  Terms are sorted lazily (descending under the ring's order)
and the sorted view is cached, so arithmetic never re-sorts eagerly.

Variable ranking: orders take an explicit ``ranking`` (variable indices,
most significant first).  The default ranking is declaration order, so
``vars: x1 x2 x3 x4`` with ``lex`` means ``x1 > x2 > x3 > x4``.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from zerodec.perm import Permutation

Rational = Fraction
Monomial = tuple  # tuple[int, ...] of exponents

ORDER_KINDS = ("lex", "grlex", "degrevlex")


@functools.lru_cache(maxsize=None)
def _key_function(kind: str, ranking: tuple[int, ...] | None, n: int) -> Callable[[Monomial], tuple]:
    # keys are flat int tuples: larger key means larger monomial
    if ranking is None or ranking == tuple(range(n)):
        if kind == "lex":
            return lambda m: m
        if kind == "grlex":
            return lambda m: (sum(m),) + m
        return lambda m: (sum(m),) + tuple(-e for e in reversed(m))
    if sorted(ranking) != list(range(n)):
        raise ValueError(f"ranking {ranking} is not a permutation of 0..{n - 1}")
    rev = tuple(reversed(ranking))
    if kind == "lex":
        return lambda m: tuple(m[i] for i in ranking)
    if kind == "grlex":
        return lambda m: (sum(m),) + tuple(m[i] for i in ranking)
    return lambda m: (sum(m),) + tuple(-m[i] for i in rev)


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``kind`` plus variable ``ranking`` (most significant first)."""

    kind: str = "degrevlex"
    ranking: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}; expected one of {ORDER_KINDS}")
        if self.ranking is not None:
            object.__setattr__(self, "ranking", tuple(self.ranking))

    def key(self, n: int) -> Callable[[Monomial], tuple]:
        return _key_function(self.kind, self.ranking, n)


class ArityError(ValueError):
    pass


class NotUnivariateError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    order: MonomialOrder = MonomialOrder()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if self.order.ranking is not None and len(self.order.ranking) != len(self.names):
            raise ValueError("order ranking length differs from the number of variables")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        return self.order.key(len(self.names))

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.names, order)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        c = Fraction(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> list[Poly]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> Poly:
        return Poly(self, {tuple(exps): Fraction(coeff)} if coeff else {})

    def index(self, name: str) -> int:
        return self.names.index(name)

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("ring", "_coeffs", "_terms", "_hash")

    def __init__(self, ring: PolyRing, coeffs: Mapping[Monomial, object] | None = None):
        self.ring = ring
        d = {}
        n = ring.nvars
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != n or any(e < 0 for e in m):
                raise ArityError(f"monomial {m} does not fit a ring with {n} variables")
            c = _as_fraction(c)
            if c:
                d[m] = c
        self._coeffs = d
        self._terms = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, coeffs: dict) -> Poly:
        # caller guarantees correct arity and no zero coefficients
        p = cls.__new__(cls)
        p.ring = ring
        p._coeffs = coeffs
        p._terms = None
        p._hash = None
        return p

    # -- views --------------------------------------------------------------

    @property
    def coeffs(self) -> Mapping[Monomial, Fraction]:
        return self._coeffs

    @property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        """(monomial, coefficient) pairs, strictly descending under the ring order."""
        if self._terms is None:
            key = self.ring.key
            self._terms = tuple(sorted(self._coeffs.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def __len__(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_constant(self) -> bool:
        return not self._coeffs or (len(self._coeffs) == 1 and not any(next(iter(self._coeffs))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._coeffs.get((0,) * self.ring.nvars, Fraction(0))

    @property
    def lead_monomial(self) -> Monomial:
        if not self._coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lead_coeff(self) -> Fraction:
        if not self._coeffs:
            return Fraction(0)
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._coeffs), default=-1)

    def degree(self, i: int) -> int:
        return max((m[i] for m in self._coeffs), default=-1)

    def variables(self) -> frozenset[int]:
        used = set()
        for m in self._coeffs:
            used.update(i for i, e in enumerate(m) if e)
        return frozenset(used)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: Poly) -> None:
        if other.ring.names != self.ring.names:
            raise ArityError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Poly._raw(self.ring, d)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.ring, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> Poly:
        c = _as_fraction(c)
        if not c:
            return self.ring.zero()
        return Poly._raw(self.ring, {m: c * v for m, v in self._coeffs.items()})

    def mul_term(self, mono: Monomial, c) -> Poly:
        c = _as_fraction(c)
        if not c:
            return self.ring.zero()
        return Poly._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): c * v for m, v in self._coeffs.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                d[m] = d.get(m, 0) + ca * cb
        return Poly._raw(self.ring, {m: c for m, c in d.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- transformations ----------------------------------------------------

    def monic(self) -> Poly:
        if not self._coeffs:
            return self
        return self.scale(1 / self.lead_coeff)

    def primitive(self) -> Poly:
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self._coeffs:
            return self
        den = math.lcm(*(c.denominator for c in self._coeffs.values()))
        ints = [int(c * den) for c in self._coeffs.values()]
        g = math.gcd(*ints)
        scale = Fraction(den, g)
        if self.lead_coeff < 0:
            scale = -scale
        return self.scale(scale)

    def with_order(self, order: MonomialOrder) -> Poly:
        """The same polynomial tagged with a different monomial order."""
        return Poly._raw(self.ring.with_order(order), self._coeffs)

    def to_ring(self, ring: PolyRing, index_map: Sequence[int] | None = None) -> Poly:
        """Embed into ``ring``; variable ``i`` goes to ``index_map[i]``."""
        if index_map is None:
            if ring.nvars < self.ring.nvars:
                raise ArityError("target ring has fewer variables")
            index_map = range(self.ring.nvars)
        index_map = list(index_map)
        d = {}
        for m, c in self._coeffs.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    e[index_map[i]] += k
            d[tuple(e)] = c
        return Poly._raw(ring, d)

    def permute(self, sigma: Permutation) -> Poly:
        """x_i -> x_sigma(i) for every variable."""
        if sigma.degree != self.ring.nvars:
            raise ArityError(f"permutation of degree {sigma.degree} on {self.ring.nvars} variables")
        img = sigma.images
        n = self.ring.nvars
        d = {}
        for m, c in self._coeffs.items():
            e = [0] * n
            for i, k in enumerate(m):
                e[img[i]] = k
            d[tuple(e)] = c
        return Poly._raw(self.ring, d)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.ring.nvars:
            raise ArityError(f"point of length {len(point)} for {self.ring.nvars} variables")
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self._coeffs.items():
            v = c
            for x, k in zip(point, m):
                if k:
                    v *= x**k
            total += v
        return total

    def substitute(self, i: int, value) -> Poly:
        """Replace variable ``i`` by a rational constant."""
        value = Fraction(value)
        d: dict = {}
        for m, c in self._coeffs.items():
            k = m[i]
            e = m[:i] + (0,) + m[i + 1 :]
            d[e] = d.get(e, 0) + c * value**k
        return Poly._raw(self.ring, {m: c for m, c in d.items() if c})

    def diff(self, i: int) -> Poly:
        d = {}
        for m, c in self._coeffs.items():
            if m[i]:
                d[m[:i] + (m[i] - 1,) + m[i + 1 :]] = c * m[i]
        return Poly._raw(self.ring, d)

    def coeff_in(self, i: int, k: int) -> Poly:
        """Coefficient of x_i^k, as a polynomial free of x_i."""
        d = {}
        for m, c in self._coeffs.items():
            if m[i] == k:
                d[m[:i] + (0,) + m[i + 1 :]] = c
        return Poly._raw(self.ring, d)

    def lead_coeff_in(self, i: int) -> Poly:
        return self.coeff_in(i, self.degree(i))


def apply_perm_polys(sigma: Permutation, ps: Iterable[Poly]) -> list[Poly]:
    """Apply the substitution x_i -> x_sigma(i) to each polynomial."""
    return [p.permute(sigma) for p in ps]


# -- univariate helpers -------------------------------------------------------


def univariate_variable(p: Poly) -> int | None:
    """Index of the only variable in ``p``; None for constants."""
    used = p.variables()
    if len(used) > 1:
        raise NotUnivariateError(f"{p} involves more than one variable")
    return next(iter(used), None)


def to_dense(p: Poly, i: int) -> list[Fraction]:
    """Coefficient list, lowest degree first, of ``p`` viewed in x_i."""
    if p.variables() - {i}:
        raise NotUnivariateError(f"{p} is not univariate in {p.ring.names[i]}")
    out = [Fraction(0)] * (p.degree(i) + 1)
    for m, c in p.coeffs.items():
        out[m[i]] = c
    return out


def from_dense(ring: PolyRing, i: int, coeffs: Sequence[Fraction]) -> Poly:
    n = ring.nvars
    d = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = k
            d[tuple(e)] = Fraction(c)
    return Poly._raw(ring, d)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def dense_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lb
        q[shift] = c
        for k, bk in enumerate(b):
            a[k + shift] -= c * bk
        a.pop()
        _trim(a)
    return q, a


def dense_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, dense_divmod(a, b)[1]
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def _common_variable(*ps: Poly) -> int:
    found = {univariate_variable(p) for p in ps} - {None}
    if len(found) > 1:
        raise NotUnivariateError("operands are univariate in different variables")
    return found.pop() if found else 0


def univar_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    i = _common_variable(a, b)
    q, r = dense_divmod(to_dense(a, i), to_dense(b, i))
    return from_dense(a.ring, i, q), from_dense(a.ring, i, r)


def univar_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two univariate polynomials (zero if both are zero)."""
    i = _common_variable(a, b)
    return from_dense(a.ring, i, dense_gcd(to_dense(a, i), to_dense(b, i)))


def univar_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return a.ring.zero()
    q, r = univar_divmod(a * b, univar_gcd(a, b))
    assert r.is_zero()
    return q.monic()


def derivative(p: Poly) -> Poly:
    i = univariate_variable(p)
    return p.ring.zero() if i is None else p.diff(i)


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), made monic."""
    if p.is_zero():
        return p
    i = univariate_variable(p)
    if i is None:
        return p.ring.one()
    q, r = univar_divmod(p, univar_gcd(p, p.diff(i)))
    assert r.is_zero()
    return q.monic()


def univariate_ring(name: str = "lambda") -> PolyRing:
    return PolyRing((name,), MonomialOrder("lex"))


# -- text format --------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, m):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text, terms descending, e.g. ``x4^2 - 3*x4 + 2``."""
    if p.is_zero():
        return "0"
    out = []
    for idx, (m, c) in enumerate(p.terms):
        mono = format_monomial(m, p.ring.names)
        a = abs(c)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int = 1):
        self.ring = ring
        self.line = line
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            mt = _TOKEN.match(text, pos)
            if not mt:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
            kind = mt.lastgroup
            self.tokens.append((kind, mt.group(kind), mt.start(kind) + 1))
            pos = mt.end()
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("eof", "", len(self.text) + 1)

    def _next(self):
        tok = self._peek()
        self.pos += 1
        return tok

    def _fail(self, tok, what: str):
        shown = "end of line" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"{what}, found {shown}", self.line, tok[2])

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty expression", self.line, 1)
        p = self.expr()
        tok = self._peek()
        if tok[0] != "eof":
            self._fail(tok, "expected an operator")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            op = self._next()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self._peek()[0] == "op" and self._peek()[1] in ("*", "/"):
            op = self._next()
            q = self.unary()
            if op[1] == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise ParseError("division by a non-constant", self.line, op[2])
                if q.is_zero():
                    raise ParseError("division by zero", self.line, op[2])
                p = p.scale(1 / q.constant_value())
        return p

    def unary(self) -> Poly:
        tok = self._peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self._next()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            self._next()
            tok = self._next()
            if tok[0] != "num":
                self._fail(tok, "expected a non-negative integer exponent")
            return base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self._next()
        kind, val, col = tok
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring.names:
                raise ParseError(f"undeclared variable {val!r}", self.line, col)
            return self.ring.gen(self.ring.index(val))
        if kind == "op" and val == "(":
            p = self.expr()
            close = self._next()
            if close[1] != ")":
                self._fail(close, "expected ')'")
            return p
        self._fail(tok, "expected a number, variable or '('")


def parse_poly(text: str, ring: PolyRing, line: int = 1) -> Poly:
    return _Parser(text, ring, line).parse()


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def _parse_header(text: str) -> tuple[list[str], Iterable]:
    lines = _content_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise ParseError("missing 'vars:' header", 1, 1) from None
    stripped = first.strip()
    if not stripped.startswith("vars:"):
        raise ParseError("first line must start with 'vars:'", lineno, first.index(stripped[0]) + 1)
    names = stripped[len("vars:") :].split()
    if not names:
        raise ParseError("no variables declared", lineno, len(first) + 1)
    for name in names:
        if not _IDENT.match(name):
            raise ParseError(f"invalid variable name {name!r}", lineno, first.index(name) + 1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", lineno, 1)
    return names, lines


def parse_system(text: str, order: MonomialOrder = MonomialOrder()) -> tuple[PolyRing, list[Poly]]:
    """Parse a ``vars:`` header followed by one polynomial per line."""
    names, lines = _parse_header(text)
    ring = PolyRing(tuple(names), order)
    return ring, [parse_poly(body, ring, lineno) for lineno, body in lines]


def parse_points(text: str) -> tuple[list[str], list[tuple[Fraction, ...]]]:
    """Parse a ``vars:`` header followed by whitespace-separated rational rows."""
    names, lines = _parse_header(text)
    points = []
    for lineno, body in lines:
        row = []
        for tok in body.split():
            try:
                row.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"invalid rational {tok!r}", lineno, body.index(tok) + 1) from None
        if len(row) != len(names):
            raise ParseError(f"expected {len(names)} coordinates, got {len(row)}", lineno, 1)
        points.append(tuple(row))
    return names, points


def format_system(ring: PolyRing, polys: Iterable[Poly]) -> str:
    return "vars: " + " ".join(ring.names) + "\n" + "".join(format_poly(p) + "\n" for p in polys)


def exact_quotient(a: Poly, b: Poly) -> Poly:
    """a / b for polynomials known to divide exactly; raises otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_constant():
        return a.scale(1 / b.constant_value())
    key = a.ring.key
    rem = dict(a.coeffs)
    quo: dict = {}
    bm, bc = b.lead_monomial, b.lead_coeff
    btail = b.terms[1:]
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        shift = tuple(x - y for x, y in zip(m, bm))
        if any(e < 0 for e in shift):
            raise ArithmeticError(f"{b} does not divide {a}")
        f = c / bc
        quo[shift] = f
        del rem[m]
        for tm, tc in btail:
            mm = tuple(x + y for x, y in zip(tm, shift))
            v = rem.get(mm, 0) - f * tc
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Poly._raw(a.ring, quo)
