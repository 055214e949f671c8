"""Integer polynomials as ascending coefficient lists, and cyclotomic rings."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..partitions import require_prime
from .intmatrix import IntMatrix

__all__ = [
    "trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_scale",
    "poly_divmod",
    "poly_rem",
    "poly_derivative",
    "poly_eval",
    "cyclotomic_poly",
    "cyclo_product",
    "companion",
    "lambda_mult_matrix",
    "mult_matrix",
    "resultant",
]

Poly = list[int]


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_sub(a: Sequence[int], b: Sequence[int]) -> Poly:
    return poly_add(a, [-x for x in b])


def poly_scale(a: Sequence[int], c: int) -> Poly:
    return trim([c * x for x in a])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def poly_divmod(a: Sequence[int], f: Sequence[int]) -> tuple[Poly, Poly]:
    """Division by a monic polynomial ``f``."""
    f = trim(f)
    if not f or f[-1] != 1:
        raise ValueError("divisor must be monic")
    r = trim(a)
    d = len(f) - 1
    if len(r) <= d:
        return [], r
    q = [0] * (len(r) - d)
    r = list(r)
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k]
        if c:
            q[k - d] = c
            for j in range(d + 1):
                r[k - d + j] -= c * f[j]
    return trim(q), trim(r[:d])


def poly_rem(a: Sequence[int], f: Sequence[int]) -> Poly:
    return poly_divmod(a, f)[1]


def poly_derivative(a: Sequence[int]) -> Poly:
    return trim([i * a[i] for i in range(1, len(a))])


def poly_eval(a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _cyclotomic(l: int, i: int) -> tuple[int, ...]:
    step = l ** (i - 1)
    coeffs = [0] * ((l - 1) * step + 1)
    for j in range(l):
        coeffs[j * step] = 1
    return tuple(coeffs)


def cyclotomic_poly(l: int, i: int) -> Poly:
    """``f_{l,i}(x) = sum_{j<l} x^(j*l^(i-1))``, whose roots have order exactly ``l^i``."""
    require_prime(l)
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"cyclotomic index must be a positive integer, got {i!r}")
    return list(_cyclotomic(l, i))


def cyclo_product(l: int, lo: int, hi: int) -> Poly:
    """``f_{l,lo} * ... * f_{l,hi}``; the empty product is 1."""
    p: Poly = [1]
    for i in range(lo, hi + 1):
        p = poly_mul(p, cyclotomic_poly(l, i))
    return p


def companion(f: Sequence[int]) -> IntMatrix:
    """Multiplication by ``x`` on ``Z[x]/(f)`` in the basis ``1, x, ..., x^(n-1)``.

    Column ``j`` holds the coordinates of ``x * x^j``.
    """
    f = trim(f)
    if not f or f[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    n = len(f) - 1
    rows = [[0] * n for _ in range(n)]
    for j in range(n - 1):
        rows[j + 1][j] = 1
    for i in range(n):
        rows[i][n - 1] = -f[i]
    return IntMatrix(rows, n)


def lambda_mult_matrix(l: int, lo: int, hi: int) -> IntMatrix:
    """Multiplication by ``x`` on ``Z[x]/(f_{l,lo} ... f_{l,hi})``."""
    require_prime(l)
    if not (isinstance(lo, int) and isinstance(hi, int)) or lo < 1 or hi < lo:
        raise ValueError(f"bad cyclotomic range {lo}..{hi}")
    return companion(cyclo_product(l, lo, hi))


def mult_matrix(u: Sequence[int], f: Sequence[int]) -> IntMatrix:
    """Multiplication by ``u`` on ``Z[x]/(f)``, columns indexed by the power basis."""
    n = len(trim(f)) - 1
    cols = []
    for j in range(n):
        v = poly_rem(poly_mul(u, [0] * j + [1]), f)
        cols.append(v + [0] * (n - len(v)))
    return IntMatrix.from_columns(cols, n)


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant via the determinant of the Sylvester matrix."""
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    fd, gd = f[::-1], g[::-1]
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return IntMatrix(rows, size).det()
