"""Smith and Hermite normal forms over the integers."""

from __future__ import annotations

from typing import Sequence

from ..partitions import Partition
from .intmatrix import IntMatrix

__all__ = [
    "smith_form",
    "smith_l_part",
    "cokernel_l_part",
    "hnf_columns",
    "hnf_with_transform",
    "solve_echelon",
    "valuation",
]


def valuation(n: int, l: int) -> int:
    """l-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def _smallest_nonzero(a, t, m, n):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_form(m: IntMatrix) -> list[int]:
    """Elementary divisors ``d_1 | d_2 | ...`` of ``m``, ``min(rows, cols)`` of them.

    Zeros appear at the end for rank deficiency.  The pivot is always the
    entry of smallest absolute value, which keeps the procedure
    deterministic.

    >>> smith_form(IntMatrix([[2, 0], [0, 3]]))
    [1, 6]
    """
    a = m.tolist()
    rows, cols = m.rows, m.cols
    k = min(rows, cols)
    divisors: list[int] = []
    for t in range(k):
        found = _smallest_nonzero(a, t, rows, cols)
        if found is None:
            divisors.extend([0] * (k - t))
            break
        _, pi, pj = found
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            clean = True
            # clear column t
            rt = a[t]
            for i in range(t + 1, rows):
                x = a[i][t]
                if x:
                    q = x // p
                    if q:
                        ri = a[i]
                        for j in range(t, cols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        clean = False
            # clear row t
            for j in range(t + 1, cols):
                x = rt[j]
                if x:
                    q = x // p
                    if q:
                        for i in range(t, rows):
                            if a[i][t]:
                                a[i][j] -= q * a[i][t]
                    if rt[j]:
                        clean = False
            if not clean:
                # a smaller remainder now sits in row t or column t
                best = (abs(p), t, t)
                for i in range(t + 1, rows):
                    x = a[i][t]
                    if x and abs(x) < best[0]:
                        best = (abs(x), i, t)
                for j in range(t + 1, cols):
                    x = rt[j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                _, bi, bj = best
                a[t], a[bi] = a[bi], a[t]
                if bj != t:
                    for row in a:
                        row[t], row[bj] = row[bj], row[t]
                continue
            # pivot isolated; enforce divisibility of the remaining block
            bad = None
            for i in range(t + 1, rows):
                ri = a[i]
                for j in range(t + 1, cols):
                    if ri[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rb = a[bad]
            for j in range(t, cols):
                rt[j] += rb[j]
        divisors.append(abs(a[t][t]))
    return divisors


def smith_l_part(divisors: Sequence[int], l: int) -> Partition:
    return Partition.from_unsorted(valuation(d, l) for d in divisors if d)


def cokernel_l_part(m: IntMatrix, l: int) -> tuple[Partition, int]:
    """l-primary torsion of ``Z^rows / m Z^cols`` and the free rank of that cokernel."""
    divisors = smith_form(m)
    corank = divisors.count(0) + m.rows - len(divisors)
    return smith_l_part(divisors, l), corank


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``g = s*a + t*b >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf_with_transform(a: IntMatrix) -> tuple[IntMatrix, list[int], IntMatrix]:
    """Column Hermite form ``a @ u = [h | 0]``.

    Returns ``(h, pivot_rows, u)`` where ``h`` has one column per pivot, the
    ``k``-th column having a positive pivot in row ``pivot_rows[k]`` and
    zeros above it; entries to the left of a pivot in its row are reduced
    into ``[0, pivot)``.  ``u`` is unimodular; its trailing columns span the
    integer kernel of ``a``.
    """
    n, m = a.rows, a.cols
    cols = [list(c) for c in a.columns()]
    trans = [[int(i == j) for i in range(m)] for j in range(m)]  # columns of u
    pivots: list[int] = []
    c = 0
    for i in range(n):
        if c == m:
            break
        live = [j for j in range(c, m) if cols[j][i]]
        if not live:
            continue
        # fold every live column into column c with extended gcds
        if live[0] != c:
            j = live[0]
            cols[c], cols[j] = cols[j], cols[c]
            trans[c], trans[j] = trans[j], trans[c]
            live = [c] + [x for x in live[1:]]
        for j in live[1:]:
            x, y = cols[c][i], cols[j][i]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            xg, yg = x // g, y // g
            cc, cj = cols[c], cols[j]
            cols[c] = [s * p + t * q for p, q in zip(cc, cj)]
            cols[j] = [yg * p - xg * q for p, q in zip(cc, cj)]
            tc, tj = trans[c], trans[j]
            trans[c] = [s * p + t * q for p, q in zip(tc, tj)]
            trans[j] = [yg * p - xg * q for p, q in zip(tc, tj)]
        if cols[c][i] < 0:
            cols[c] = [-x for x in cols[c]]
            trans[c] = [-x for x in trans[c]]
        piv = cols[c][i]
        for k in range(c):
            q = cols[k][i] // piv
            if q:
                cols[k] = [p - q * r for p, r in zip(cols[k], cols[c])]
                trans[k] = [p - q * r for p, r in zip(trans[k], trans[c])]
        pivots.append(i)
        c += 1
    h = IntMatrix.from_columns(cols[:c]) if c else IntMatrix.zeros(n, 0)
    u = IntMatrix.from_columns(trans) if m else IntMatrix.zeros(0, 0)
    return h, pivots, u


def hnf_columns(a: IntMatrix, modulus: int | None = None) -> tuple[IntMatrix, list[int]]:
    """Column Hermite basis of the lattice spanned by the columns of ``a``.

    With ``modulus=D`` the caller guarantees that ``D*Z^n`` lies in the
    lattice; the lattice returned is then the span of the columns together
    with ``D*Z^n`` and entries stay bounded by ``D``.
    """
    if modulus is None:
        h, pivots, _ = hnf_with_transform(a)
        return h, pivots
    n = a.rows
    d = modulus
    pool = []
    for col in a.columns():
        v = [x % d for x in col]
        if any(v):
            pool.append(v)
    basis: list[list[int]] = []
    for i in range(n):
        live = [v for v in pool if v[i]]
        rest = [v for v in pool if not v[i]]
        piv = [0] * n
        piv[i] = d
        for v in live:
            x, y = piv[i], v[i]
            g, s, t = _xgcd(x, y)
            xg, yg = x // g, y // g
            new_piv = [(s * p + t * q) % d for p, q in zip(piv, v)]
            other = [(yg * p - xg * q) % d for p, q in zip(piv, v)]
            new_piv[i] = g
            other[i] = 0
            piv = new_piv
            if any(other):
                rest.append(other)
        # d * (piv / g) has zero in row i and is a lattice vector
        g = piv[i]
        if g != d:
            extra = [((d // g) * x) % d for x in piv]
            extra[i] = 0
            if any(extra):
                rest.append(extra)
        basis.append(piv)
        pool = rest
    # reduce below-pivot entries (column k has pivot in row k)
    for i in range(n):
        pv = basis[i]
        for k in range(i):
            q = basis[k][i] // pv[i]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], pv)]
    return IntMatrix.from_columns(basis), list(range(n))


def solve_echelon(h: IntMatrix, pivots: Sequence[int], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in a column-echelon basis, or ``None``."""
    v = list(v)
    coeffs = []
    for k, i in enumerate(pivots):
        p = h[i, k]
        if v[i] % p:
            return None
        q = v[i] // p
        coeffs.append(q)
        if q:
            for r in range(i, h.rows):
                v[r] -= q * h[r, k]
    if any(v):
        return None
    return coeffs
