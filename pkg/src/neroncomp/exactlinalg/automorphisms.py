"""Finite-order lattice automorphisms and the size of their coinvariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from ..partitions import Partition, conjugate, delta_l, require_prime
from .intmatrix import IntMatrix
from .normalforms import cokernel_l_part
from .polys import cyclotomic_poly, poly_divmod, poly_eval

__all__ = [
    "LatticeAuto",
    "CycloMultiplicities",
    "CoinvariantReport",
    "cyclotomic_multiplicities",
    "multiplicities_of_poly",
    "conjugate_counts",
    "check_coinvariant_bound",
    "totient_l",
]


def totient_l(l: int, i: int) -> int:
    """Euler's phi of ``l^i``, the degree of ``f_{l,i}``."""
    return l ** (i - 1) * (l - 1)


class LatticeAuto:
    """Automorphism ``sigma`` of ``Z^dim``, optionally of a declared finite order."""

    __slots__ = ("dim", "sigma", "declared_order")

    def __init__(self, sigma: IntMatrix, declared_order: int | None = None):
        if not sigma.is_square():
            raise ValueError("automorphism matrix must be square")
        if abs(sigma.det()) != 1:
            raise ValueError("matrix is not invertible over Z")
        if declared_order is not None:
            if declared_order < 1:
                raise ValueError("order must be positive")
            if sigma**declared_order != IntMatrix.identity(sigma.rows):
                raise ValueError(f"sigma^{declared_order} is not the identity")
        self.dim = sigma.rows
        self.sigma = sigma
        self.declared_order = declared_order

    def __repr__(self) -> str:
        return f"LatticeAuto(dim={self.dim}, order={self.declared_order or 'unknown'})"


@dataclass(frozen=True)
class CycloMultiplicities:
    """``m[i-1]`` is the multiplicity of ``f_{l,i}``; trailing zeros are dropped."""

    l: int
    m: tuple[int, ...] = ()

    def __post_init__(self):
        require_prime(self.l)
        m = [int(x) for x in self.m]
        if any(x < 0 for x in m):
            raise ValueError("multiplicities must be non-negative")
        while m and m[-1] == 0:
            m.pop()
        object.__setattr__(self, "m", tuple(m))

    def get(self, i: int) -> int:
        """Multiplicity of ``f_{l,i}`` (``i >= 1``)."""
        return self.m[i - 1] if 0 < i <= len(self.m) else 0

    def rank(self) -> int:
        """Total degree ``sum_i m_i * phi(l^i)``."""
        return sum(x * totient_l(self.l, i) for i, x in enumerate(self.m, start=1))

    def __add__(self, other: "CycloMultiplicities") -> "CycloMultiplicities":
        if self.l != other.l:
            raise ValueError("multiplicities for different primes")
        n = max(len(self.m), len(other.m))
        return CycloMultiplicities(self.l, tuple(self.get(i) + other.get(i) for i in range(1, n + 1)))

    def to_json(self) -> list[int]:
        return list(self.m)


def multiplicities_of_poly(poly: Sequence[int], l: int) -> tuple[CycloMultiplicities, list[int]]:
    """Multiplicities of each ``f_{l,i}`` in ``poly`` by trial division, plus the cofactor."""
    require_prime(l)
    rest = list(poly)
    m = []
    i = 1
    while totient_l(l, i) <= len(rest) - 1:
        f = cyclotomic_poly(l, i)
        count = 0
        while len(rest) - 1 >= len(f) - 1:
            q, r = poly_divmod(rest, f)
            if r:
                break
            rest = q
            count += 1
        m.append(count)
        i += 1
    return CycloMultiplicities(l, tuple(m)), rest


def cyclotomic_multiplicities(a: LatticeAuto | IntMatrix, l: int) -> CycloMultiplicities:
    sigma = a.sigma if isinstance(a, LatticeAuto) else a
    return multiplicities_of_poly(sigma.charpoly(), l)[0]


def conjugate_counts(m: Union[CycloMultiplicities, Sequence[int]]) -> Partition:
    """``p_j = #{i : m_i >= j}``, i.e. the conjugate of ``m`` sorted."""
    values = m.m if isinstance(m, CycloMultiplicities) else tuple(m)
    return conjugate(Partition.from_unsorted(values))


@dataclass(frozen=True)
class CoinvariantReport:
    coinv: Partition
    multiplicities: CycloMultiplicities
    bound: int
    rank: int
    rank_bound_ok: bool
    equality: bool
    structure_ok: bool | None

    @property
    def ok(self) -> bool:
        return self.rank_bound_ok and self.structure_ok is not False


def check_coinvariant_bound(a: LatticeAuto | IntMatrix, l: int) -> CoinvariantReport:
    """Compare the coinvariants ``M/(sigma-1)M`` with the multiplicity bound.

    Checks ``delta_l(coinv) <= delta_l(p) <= rank`` where ``p`` is the
    conjugate of the multiplicities of the ``f_{l,i}`` in the characteristic
    polynomial.  When ``delta_l(coinv)`` reaches the rank, the lattice must
    be a sum of rings ``Z_l[x]/(f_{l,1}...f_{l,r})``; the checkable shadow of
    that is ``coinv == p`` with the multiplicities weakly decreasing and no
    other factors in the characteristic polynomial.
    """
    require_prime(l)
    sigma = a.sigma if isinstance(a, LatticeAuto) else a
    n = sigma.rows
    cp = sigma.charpoly()
    if poly_eval(cp, 1) == 0:
        raise ValueError("1 is an eigenvalue; coinvariants are not finite")
    m, _ = multiplicities_of_poly(cp, l)
    coinv, corank = cokernel_l_part(sigma - IntMatrix.identity(n), l)
    assert corank == 0
    p = conjugate_counts(m)
    bound = delta_l(l, p)
    d = delta_l(l, coinv)
    rank_ok = d <= bound <= n
    equality = d == n
    structure = None
    if equality:
        decreasing = all(m.get(i) >= m.get(i + 1) for i in range(1, len(m.m) + 1))
        structure = coinv == p and decreasing and m.rank() == n
    return CoinvariantReport(coinv, m, bound, n, rank_ok, equality, structure)
