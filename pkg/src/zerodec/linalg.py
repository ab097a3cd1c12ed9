"""Exact dense linear algebra over the rationals and over polynomial rings.

Entries are either :class:`fractions.Fraction` or :class:`zerodec.polyring.Poly`;
the same :class:`Matrix` type serves both.  Characteristic polynomials use
the convention ``det(lambda*Id - M)`` (monic in lambda).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from zerodec.polyring import MonomialOrder, Poly, PolyRing, exact_quotient, from_dense, univar_lcm, univariate_ring

#: Default largest dimension for the symbolic characteristic polynomial.
DEFAULT_SYMBOLIC_CUTOFF = 16


class DimensionError(ValueError):
    pass


class SymbolicCutoffError(DimensionError):
    """Raised when a symbolic characteristic polynomial would be too large."""


class Matrix:
    """Immutable dense matrix, row-major."""

    __slots__ = ("rows", "cols", "entries", "_sparse")

    def __init__(self, rows: Sequence[Sequence]):
        self.entries = tuple(tuple(r) for r in rows)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionError("ragged matrix rows")
        self._sparse = None

    @classmethod
    def rational(cls, rows: Sequence[Sequence]) -> Matrix:
        return cls([[Fraction(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=Fraction(0)) -> Matrix:
        return cls([[zero] * cols for _ in range(rows)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "Matrix(" + repr([[str(x) for x in r] for r in self.entries]) + ")"

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def _same_shape(self, other: Matrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def scale(self, c) -> Matrix:
        return Matrix([[x * c for x in r] for r in self.entries])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        cols = list(zip(*other.entries))
        return Matrix([[_dot(r, c) for c in cols] for r in self.entries])

    def sparse_rows(self) -> list[list[tuple[int, object]]]:
        if self._sparse is None:
            self._sparse = [[(j, a) for j, a in enumerate(r) if a] for r in self.entries]
        return self._sparse

    def apply(self, v: Sequence) -> list:
        out = []
        for srow in self.sparse_rows():
            total = 0
            for j, a in srow:
                if v[j]:
                    total = total + a * v[j]
            out.append(total)
        return out

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.entries)))

    def trace(self):
        return _sum(self.entries[i][i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(not x for r in self.entries for x in r)


def _sum(items):
    it = iter(items)
    total = next(it, 0)
    for x in it:
        total = total + x
    return total


def _dot(r, c, zero=0):
    total = zero
    for a, b in zip(r, c):
        if a and b:
            total = total + a * b
    return total


def _require_square(M: Matrix) -> None:
    if not M.is_square:
        raise DimensionError(f"expected a square matrix, got {M.rows}x{M.cols}")


def _faddeev_leverrier(A: list[list], n: int, one, zero, divide) -> list:
    """Coefficients c_0..c_n of det(lambda*Id - A) via the trace recurrence."""
    # multiplication matrices are mostly zero; multiply through the sparse rows of A
    sparse = [[(j, a) for j, a in enumerate(row) if a] for row in A]
    coeffs = [zero] * (n + 1)
    coeffs[n] = one
    Mk: list[list] | None = None
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        if Mk is None:
            prod = [[zero] * n for _ in range(n)]
        else:
            prod = []
            for srow in sparse:
                acc = [zero] * n
                for j, a in srow:
                    acc = [x + a * y if y else x for x, y in zip(acc, Mk[j])]
                prod.append(acc)
        for i in range(n):
            prod[i][i] = prod[i][i] + c_prev
        Mk = prod
        tr = zero
        for i, srow in enumerate(sparse):
            for j, a in srow:
                if Mk[j][i]:
                    tr = tr + a * Mk[j][i]
        coeffs[n - k] = divide(-tr, k)
    return coeffs


def _int_divide(a: int, k: int) -> int:
    q, r = divmod(a, k)
    if r:
        raise ArithmeticError("non-exact division in integer trace recurrence")
    return q


def char_poly_rat(M: Matrix, ring: PolyRing | None = None) -> Poly:
    """det(lambda*Id - M) for a rational matrix, as a univariate polynomial."""
    _require_square(M)
    ring = ring or univariate_ring()
    n = M.rows
    if n == 0:
        return ring.one()
    # scale to an integer matrix so the recurrence runs on Python ints
    den = math.lcm(*(Fraction(x).denominator for r in M.entries for x in r))
    B = [[int(Fraction(x) * den) for x in r] for r in M.entries]
    cb = _faddeev_leverrier(B, n, 1, 0, _int_divide)
    coeffs = [Fraction(cb[j], den ** (n - j)) for j in range(n + 1)]
    return from_dense(ring, 0, coeffs)


def symbolic_ring(n: int, lam: str = "lambda", tag: str = "t") -> PolyRing:
    """Ring (lambda, t1, ..., tn) under lex with lambda most significant."""
    return PolyRing((lam,) + tuple(f"{tag}{i + 1}" for i in range(n)), MonomialOrder("lex"))


def char_poly_sym(
    Ms: Sequence[tuple[int, Matrix]],
    n: int | None = None,
    cutoff: int | None = DEFAULT_SYMBOLIC_CUTOFF,
) -> Poly:
    """det(lambda*Id - sum_i t_i*M_i) in the ring (lambda, t_1..t_n).

    ``Ms`` pairs a 0-based tag index ``i`` with a rational matrix.
    """
    if not Ms:
        raise DimensionError("empty matrix list")
    N = Ms[0][1].rows
    for _, M in Ms:
        _require_square(M)
        if M.rows != N:
            raise DimensionError("matrices of different dimensions")
    if cutoff is not None and N > cutoff:
        raise SymbolicCutoffError(f"dimension {N} exceeds symbolic cutoff {cutoff}")
    if n is None:
        n = max(i for i, _ in Ms) + 1
    ring = symbolic_ring(n)
    zero = ring.zero()
    tvars = [ring.gen(i + 1) for i in range(n)]
    A = [[zero] * N for _ in range(N)]
    for i, M in Ms:
        for r in range(N):
            for c in range(N):
                x = M.entries[r][c]
                if x:
                    A[r][c] = A[r][c] + tvars[i].scale(x)
    coeffs = _faddeev_leverrier(A, N, ring.one(), zero, lambda p, k: p.scale(Fraction(1, k)))
    lam = ring.gen(0)
    out = zero
    for j, c in enumerate(coeffs):
        if c:
            out = out + c * lam**j
    return out


def bareiss_det(M: Matrix):
    """Fraction-free determinant (Bareiss); entries Fractions or Polys."""
    _require_square(M)
    n = M.rows
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in M.entries]
    first = a[0][0]
    poly = isinstance(first, Poly)
    div = exact_quotient if poly else (lambda x, y: x / y)
    prev = first.ring.one() if poly else Fraction(1)
    sign = 1
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return first.ring.zero() if poly else Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = div(a[i][j] * pivot - aik * a[k][j], prev)
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def char_poly_bareiss(M: Matrix, ring: PolyRing | None = None) -> Poly:
    """det(lambda*Id - M) through a Bareiss determinant over Q[lambda]."""
    _require_square(M)
    ring = ring or univariate_ring()
    lam = ring.gen(0)
    n = M.rows
    rows = [[(lam if i == j else ring.zero()) - ring.constant(M.entries[i][j]) for j in range(n)] for i in range(n)]
    return bareiss_det(Matrix(rows)) if n else ring.one()


def poly_at_matrix(p: Poly, M: Matrix) -> Matrix:
    """Evaluate a univariate polynomial at a square matrix (Horner)."""
    _require_square(M)
    n = M.rows
    deg = p.total_degree()
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.coeffs.items():
        coeffs[sum(m)] = c
    result = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for c in reversed(coeffs):
        result = (result @ M) + ident.scale(c)
    return result


def _reduce(vec: list, rows: list, track: list | None = None, tracks: list | None = None) -> None:
    """Reduce ``vec`` in place against echelon ``rows`` of (pivot, vector)."""
    for idx, (p, row) in enumerate(rows):
        f = vec[p]
        if f:
            for j in range(p, len(vec)):
                if row[j]:
                    vec[j] -= f * row[j]
            if track is not None:
                other = tracks[idx]
                if len(track) < len(other):
                    track.extend([Fraction(0)] * (len(other) - len(track)))
                for j, c in enumerate(other):
                    if c:
                        track[j] -= f * c


def _local_annihilator(M: Matrix, v: list) -> tuple[list[Fraction], list[list]]:
    """Monic dense polynomial p of least degree with p(M)v = 0, plus the Krylov vectors."""
    rows: list = []
    tracks: list = []
    krylov = []
    w = list(v)
    k = 0
    while True:
        krylov.append(list(w))
        red = list(w)
        track = [Fraction(0)] * k + [Fraction(1)]
        _reduce(red, rows, track, tracks)
        pivot = next((j for j, x in enumerate(red) if x), None)
        if pivot is None:
            krylov.pop()
            return track, krylov
        inv = 1 / red[pivot]
        rows.append((pivot, [x * inv for x in red]))
        tracks.append([c * inv for c in track])
        rows_order = sorted(range(len(rows)), key=lambda i: rows[i][0])
        rows[:] = [rows[i] for i in rows_order]
        tracks[:] = [tracks[i] for i in rows_order]
        w = M.apply(w)
        k += 1


def min_poly(M: Matrix, ring: PolyRing | None = None) -> Poly:
    """Monic minimal polynomial via Krylov sequences on standard basis vectors."""
    _require_square(M)
    ring = ring or univariate_ring()
    n = M.rows
    result = ring.one()
    span: list = []  # echelon basis of the M-invariant subspace covered so far
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        test = list(e)
        _reduce(test, span)
        if not any(test):
            continue
        ann, krylov = _local_annihilator(M, e)
        result = univar_lcm(result, from_dense(ring, 0, ann))
        for w in krylov:
            _reduce(w, span)
            pivot = next((i for i, x in enumerate(w) if x), None)
            if pivot is not None:
                inv = 1 / w[pivot]
                span.append((pivot, [x * inv for x in w]))
                span.sort(key=lambda r: r[0])
    return result
