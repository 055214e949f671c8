"""Arithmetic over Z/l^N and with l-adic numbers of bounded precision."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import NonUnitError, PrecisionError
from ..partitions import require_prime
from .intmatrix import IntMatrix
from .polys import mult_matrix, poly_mul, poly_rem, trim

__all__ = ["ModMatrix", "mod_invert", "mod_diagonalize", "LadicPoly", "ladic_inverse"]


class ModMatrix:
    """Matrix with entries in ``Z/l^N``, stored as residues in ``[0, l^N)``.

    Operands of binary operations must agree on ``l`` and ``N``; there is no
    silent change of precision.
    """

    __slots__ = ("l", "N", "modulus", "rows", "cols", "_e")

    def __init__(self, l: int, N: int, entries: Iterable[Iterable[int]], cols: int | None = None):
        require_prime(l)
        if not isinstance(N, int) or N < 1:
            raise ValueError(f"precision must be a positive integer, got {N!r}")
        self.l, self.N, self.modulus = l, N, l**N
        m = self.modulus
        e = tuple(tuple(int(x) % m for x in row) for row in entries)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(row) != cols for row in e):
            raise ValueError("ragged matrix")
        self.rows, self.cols, self._e = len(e), cols, e

    @classmethod
    def from_int(cls, m: IntMatrix, l: int, N: int) -> "ModMatrix":
        return cls(l, N, m.tolist(), m.cols)

    def to_int(self) -> IntMatrix:
        """Lift to integers using the residues in ``[0, l^N)``."""
        return IntMatrix(self._e, self.cols)

    def __getitem__(self, ij):
        return self._e[ij[0]][ij[1]]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._e]

    def _check(self, other: "ModMatrix") -> None:
        if not isinstance(other, ModMatrix):
            raise TypeError("expected a ModMatrix")
        if (self.l, self.N) != (other.l, other.N):
            raise ValueError(
                f"precision mismatch: {self.l}^{self.N} vs {other.l}^{other.N}"
            )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ModMatrix)
            and (self.l, self.N, self.cols) == (other.l, other.N, other.cols)
            and self._e == other._e
        )

    def __hash__(self) -> int:
        return hash((self.l, self.N, self._e))

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        self._check(other)
        return ModMatrix(
            self.l, self.N, [[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.cols
        )

    def __sub__(self, other: "ModMatrix") -> "ModMatrix":
        self._check(other)
        return ModMatrix(
            self.l, self.N, [[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.cols
        )

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other._e))
        return ModMatrix(
            self.l, self.N, [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self._e], other.cols
        )

    def __repr__(self) -> str:
        return f"ModMatrix(l={self.l}, N={self.N}, {self.tolist()})"


# polynomials over F_l


def _fl_trim(p, l):
    p = [x % l for x in p]
    return trim(p)


def _fl_divmod(a, b, l):
    a, b = _fl_trim(a, l), _fl_trim(b, l)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, l)
    q = [0] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        c = (r[-1] * inv) % l
        k = len(r) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] = (r[k + j] - c * y) % l
        r = _fl_trim(r, l)
    return _fl_trim(q, l), r


def _fl_inverse(u, f, l):
    """Inverse of ``u`` in ``F_l[x]/(f)`` by the extended Euclidean algorithm."""
    r0, r1 = _fl_trim(f, l), _fl_trim(u, l)
    s0, s1 = [], [1]
    while r1:
        q, r = _fl_divmod(r0, r1, l)
        r0, r1 = r1, r
        s0, s1 = s1, _fl_trim([a - b for a, b in _zip_pad(s0, poly_mul(q, s1))], l)
    if len(r0) != 1:
        raise NonUnitError("element is not a unit modulo l")
    c = pow(r0[0], -1, l)
    return _fl_trim([c * x for x in s0], l)


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


def mod_invert(u: Sequence[int], f: Sequence[int], l: int, N: int) -> list[int]:
    """Inverse of ``u`` in ``(Z/l^N)[x]/(f)`` for monic ``f``.

    The inverse modulo ``l`` comes from the extended Euclidean algorithm and
    is then lifted by Newton iteration ``v <- v(2 - uv)``, which doubles the
    number of correct l-adic digits per step.  Raises ``NonUnitError`` when
    ``u`` is not invertible modulo ``l``.
    """
    require_prime(l)
    n = len(trim(f)) - 1
    v = _fl_inverse(poly_rem(list(u), f), f, l)
    k = 1
    while k < N:
        k = min(2 * k, N)
        m = l**k
        uv = poly_rem(poly_mul(u, v), f)
        corr = [-x for x in uv]
        corr = (corr + [0] * n)[: max(n, 1)]
        corr[0] += 2
        v = [x % m for x in poly_rem(poly_mul(v, corr), f)]
    m = l**N
    v = [x % m for x in poly_rem(v, f)]
    return v + [0] * (n - len(v))


def mod_diagonalize(m: ModMatrix) -> list[int]:
    """Elementary divisor exponents ``e_1 <= e_2 <= ...`` of a matrix over ``Z/l^N``.

    ``Z/l^N`` is a chain ring, so the entry of least valuation always
    divides everything else and can be used as pivot.  An exponent equal to
    ``N`` means the divisor is zero at this precision, i.e. unresolved.
    """
    l, N, q = m.l, m.N, m.modulus
    a = m.tolist()
    rows, cols = m.rows, m.cols
    out = []

    def val(x):
        if x == 0:
            return N
        v = 0
        while x % l == 0:
            x //= l
            v += 1
        return v

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j]:
                    v = val(a[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            out.extend([N] * (min(rows, cols) - t))
            break
        e, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        unit = (a[t][t] // l**e) % q
        inv = pow(unit, -1, q)
        a[t] = [(x * inv) % q for x in a[t]]
        pe = l**e
        rt = a[t]
        for i in range(t + 1, rows):
            if a[i][t]:
                f = a[i][t] // pe
                a[i] = [(x - f * y) % q for x, y in zip(a[i], rt)]
        for j in range(t + 1, cols):
            if rt[j]:
                f = rt[j] // pe
                for i in range(t, rows):
                    a[i][j] = (a[i][j] - f * a[i][t]) % q
        out.append(e)
    return out


class LadicPoly:
    """Element of ``Q_l[x]/(f)`` known to bounded absolute precision.

    The value is ``coeffs / l^shift``; it is known modulo ``l^prec`` (that is,
    two representatives with the same ``prec`` differ by something of
    valuation at least ``prec``).  ``prec=None`` means exact.
    """

    __slots__ = ("l", "f", "coeffs", "shift", "prec")

    def __init__(self, l: int, f: Sequence[int], coeffs: Sequence[int], shift: int = 0, prec: int | None = None):
        self.l = l
        self.f = tuple(f)
        n = len(self.f) - 1
        c = poly_rem(list(coeffs), self.f)
        c = c + [0] * (n - len(c))
        if prec is not None:
            m = l ** (prec + shift) if prec + shift > 0 else 1
            c = [x % m for x in c]
        # pull out common powers of l from the numerator
        while shift > 0 and all(x % l == 0 for x in c):
            c = [x // l for x in c]
            shift -= 1
        self.coeffs, self.shift, self.prec = c, shift, prec

    @classmethod
    def exact(cls, l: int, f: Sequence[int], coeffs: Sequence[int]) -> "LadicPoly":
        return cls(l, f, coeffs)

    def _like(self, coeffs, shift, prec) -> "LadicPoly":
        return LadicPoly(self.l, self.f, coeffs, shift, prec)

    def _same_ring(self, other: "LadicPoly") -> None:
        if (self.l, self.f) != (other.l, other.f):
            raise ValueError("elements live in different rings")

    @staticmethod
    def _min(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "LadicPoly") -> "LadicPoly":
        self._same_ring(other)
        k = max(self.shift, other.shift)
        a = [x * self.l ** (k - self.shift) for x in self.coeffs]
        b = [x * other.l ** (k - other.shift) for x in other.coeffs]
        return self._like([x + y for x, y in zip(a, b)], k, self._min(self.prec, other.prec))

    def __neg__(self) -> "LadicPoly":
        return self._like([-x for x in self.coeffs], self.shift, self.prec)

    def __sub__(self, other: "LadicPoly") -> "LadicPoly":
        return self + (-other)

    def __mul__(self, other: "LadicPoly") -> "LadicPoly":
        self._same_ring(other)
        pa = None if self.prec is None else self.prec - other.shift
        pb = None if other.prec is None else other.prec - self.shift
        return self._like(poly_mul(self.coeffs, other.coeffs), self.shift + other.shift, self._min(pa, pb))

    def scale(self, c: int) -> "LadicPoly":
        return self._like([c * x for x in self.coeffs], self.shift, self.prec)

    def reduce_to(self, g: Sequence[int]) -> "LadicPoly":
        """Image under ``Q_l[x]/(f) -> Q_l[x]/(g)`` for ``g`` dividing ``f``."""
        return LadicPoly(self.l, g, self.coeffs, self.shift, self.prec)

    def lift_to(self, f: Sequence[int]) -> "LadicPoly":
        """Same coefficient vector read in ``Q_l[x]/(f)`` (``deg f >= deg`` of ours)."""
        return LadicPoly(self.l, f, self.coeffs, self.shift, self.prec)

    def is_integral(self) -> bool:
        return self.shift <= 0

    def residues(self, N: int) -> list[int]:
        """Coefficients modulo ``l^N``; requires integrality and enough precision."""
        if self.shift > 0:
            raise PrecisionError(f"element has denominator l^{self.shift}")
        if self.prec is not None and self.prec < N:
            raise PrecisionError(f"only {self.prec} l-adic digits known, {N} requested")
        m = self.l**N
        return [(x * self.l ** (-self.shift)) % m for x in self.coeffs]

    def __repr__(self) -> str:
        return f"LadicPoly({self.coeffs}/{self.l}^{self.shift}, prec={self.prec})"


def ladic_inverse(u: Sequence[int], f: Sequence[int], l: int, prec: int) -> LadicPoly:
    """Inverse in ``Q_l[x]/(f)`` of an integer polynomial ``u``, to precision ``prec``.

    Units of ``Z_l[x]/(f)`` go through ``mod_invert``.  A non-unit that is
    still invertible after tensoring with ``Q_l`` is inverted exactly over
    the rationals (its multiplication matrix is an integer matrix) and the
    result is then read l-adically.
    """
    try:
        return LadicPoly(l, f, mod_invert(u, f, l, prec), 0, prec)
    except NonUnitError:
        pass
    n = len(trim(f)) - 1
    a = [[Fraction(x) for x in row] for row in mult_matrix(u, f).tolist()]
    rhs = [Fraction(int(i == 0)) for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise NonUnitError("element is a zero divisor")
        a[c], a[piv] = a[piv], a[c]
        rhs[c], rhs[piv] = rhs[piv], rhs[c]
        for i in range(n):
            if i != c and a[i][c]:
                g = a[i][c] / a[c][c]
                a[i] = [x - g * y for x, y in zip(a[i], a[c])]
                rhs[i] -= g * rhs[c]
    w = [rhs[i] / a[i][i] for i in range(n)]
    shift = 0
    parts = []
    for x in w:
        den, k = x.denominator, 0
        while den % l == 0:
            den //= l
            k += 1
        parts.append((x.numerator, den, k))
        shift = max(shift, k)
    m = l ** (prec + shift)
    coeffs = [num * l ** (shift - k) * pow(den, -1, m) for num, den, k in parts]
    return LadicPoly(l, f, coeffs, shift, prec)
