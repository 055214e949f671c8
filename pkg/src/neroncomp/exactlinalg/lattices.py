"""Sublattices of Z^n given by generator columns: sums, intersections, quotients."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..partitions import Partition
from .intmatrix import IntMatrix
from .normalforms import hnf_columns, hnf_with_transform, smith_form, smith_l_part, solve_echelon

__all__ = [
    "lattice_sum",
    "lattice_intersection",
    "lattice_contains",
    "lattice_coordinates",
    "quotient_invariants",
    "independent_columns",
    "rational_rank",
    "solve_mod",
]

# large prime used to pick independent columns quickly; results are
# confirmed exactly whenever the shortcut could be wrong
_PROBE_PRIME = (1 << 61) - 1


def lattice_sum(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Hermite basis of ``A + B``."""
    h, _ = hnf_columns(IntMatrix.hstack([a, b]))
    return h


def lattice_intersection(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Hermite basis of ``A ∩ B``, via the kernel of ``[A | -B]``."""
    stacked = IntMatrix.hstack([a, -b])
    _, pivots, u = hnf_with_transform(stacked)
    kernel = [u.col(j)[: a.cols] for j in range(len(pivots), u.cols)]
    if not kernel:
        return IntMatrix.zeros(a.rows, 0)
    vectors = a @ IntMatrix.from_columns(kernel)
    h, _ = hnf_columns(vectors)
    return h


def lattice_coordinates(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    """Integer coordinates of each column of ``vectors`` in the lattice spanned by ``basis``.

    The coordinates refer to the Hermite basis of that lattice, which is
    returned implicitly through the shape ``(rank, vectors.cols)``.
    Raises ``ValueError`` if some column is not in the lattice.
    """
    h, pivots = hnf_columns(basis)
    coords = []
    for j in range(vectors.cols):
        c = solve_echelon(h, pivots, vectors.col(j))
        if c is None:
            raise ValueError(f"column {j} does not lie in the lattice")
        coords.append(c)
    if not coords:
        return IntMatrix.zeros(len(pivots), 0)
    return IntMatrix.from_columns(coords)


def lattice_contains(basis: IntMatrix, vector: Sequence[int]) -> bool:
    h, pivots = hnf_columns(basis)
    return solve_echelon(h, pivots, vector) is not None


def quotient_invariants(big: IntMatrix, small: IntMatrix, l: int) -> tuple[Partition, int]:
    """l-part of ``L / S`` and the free rank of that quotient.

    ``L`` and ``S`` are spanned by the columns of ``big`` and ``small``.
    Raises ``ValueError`` when ``S`` is not contained in ``L``.
    """
    try:
        coords = lattice_coordinates(big, small)
    except ValueError:
        raise ValueError("sublattice is not contained in the lattice") from None
    if coords.rows == 0:
        return Partition(), 0
    if coords.cols == 0:
        return Partition(), coords.rows
    divisors = smith_form(coords)
    corank = divisors.count(0) + coords.rows - len(divisors)
    return smith_l_part(divisors, l), corank


def _rank_mod(a: list[list[int]], q: int) -> list[int]:
    """Pivot columns of ``a`` over ``F_q``."""
    a = [[x % q for x in row] for row in a]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, q)
        pr = [(x * inv) % q for x in a[r]]
        a[r] = pr
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rational_rank(m: IntMatrix) -> int:
    return m.rank()


def independent_columns(m: IntMatrix) -> list[int]:
    """Indices of a maximal set of columns of ``m`` independent over Q."""
    if m.rows == 0 or m.cols == 0:
        return []
    pivots = _rank_mod(m.tolist(), _PROBE_PRIME)
    if len(pivots) == m.rank():
        return pivots
    # the probe prime divides some minor; fall back to exact elimination
    a = [[Fraction(x) for x in row] for row in m.tolist()]
    pivots = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m.rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


def solve_mod(basis: IntMatrix, vectors: IntMatrix, l: int, n: int) -> IntMatrix:
    """Coordinates modulo ``l^n`` of ``vectors`` in a basis that stays a basis mod ``l``.

    The columns of ``basis`` must span a saturated sublattice (their
    reduction mod ``l`` is injective); that makes the coordinates unique
    modulo ``l^n``.  Raises ``ValueError`` if a column of ``vectors`` is not
    congruent to a combination of the basis.
    """
    q = l**n
    rows, k = basis.rows, basis.cols
    aug = [list(basis.row(i)) + list(vectors.row(i)) for i in range(rows)]
    aug = [[x % q for x in row] for row in aug]
    width = k + vectors.cols
    r = 0
    pivot_rows = []
    for c in range(k):
        piv = next((i for i in range(r, rows) if aug[i][c] % l), None)
        if piv is None:
            raise ValueError("basis is not saturated at l")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, q)
        pr = [(x * inv) % q for x in aug[r]]
        aug[r] = pr
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], pr)]
        pivot_rows.append(r)
        r += 1
    for i in range(r, rows):
        if any(aug[i][j] for j in range(k, width)):
            raise ValueError(f"vector not in the span modulo {l}^{n}")
    return IntMatrix([[aug[i][j] for j in range(k, width)] for i in range(k)], vectors.cols)
