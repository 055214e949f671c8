"""Integer partitions as invariants of finite abelian l-groups.

A partition ``(a_1, a_2, ...)`` with ``a_1 >= a_2 >= ... > 0`` stands for the
group ``Z/l^a_1 + Z/l^a_2 + ...``.  Besides the two orderings used on such
sequences (lexicographic and componentwise), this module provides the
numerical invariants ``delta_l``, ``delta_prime_l`` and ``f_l``.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from sympy import isprime

from .errors import BudgetExceeded

__all__ = [
    "Partition",
    "Order",
    "conjugate",
    "lex_compare",
    "dominates",
    "majorizes",
    "delta_l",
    "delta_prime_l",
    "shift_d",
    "shift_dprime",
    "f_l",
    "balanced_split",
    "min_split_delta_bruteforce",
    "merge",
    "componentwise_sum",
    "partitions_of",
    "count_partitions",
    "require_prime",
]

SPLIT_BUDGET = 10**7


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition([2, 1, 0])``
    equals ``Partition([2, 1])``.  Because of that normalisation, the builtin
    tuple ordering coincides with the lexicographic ordering in which absent
    parts read as 0.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = [int(p) for p in parts]
        for i, p in enumerate(parts):
            if p < 0:
                raise ValueError(f"negative part {p} in {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @classmethod
    def from_unsorted(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted((int(p) for p in parts), reverse=True))

    def part(self, i: int) -> int:
        """The ``i``-th part (0-indexed), 0 beyond the length."""
        return self[i] if i < len(self) else 0

    @property
    def size(self) -> int:
        return sum(self)

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def from_json(cls, data) -> "Partition":
        if not isinstance(data, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in data
        ):
            raise ValueError(f"partition must be a JSON array of integers, got {data!r}")
        return cls(data)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def require_prime(l: int) -> None:
    if not isinstance(l, int) or not isprime(l):
        raise ValueError(f"{l!r} is not a prime")


def conjugate(p: Iterable[int]) -> Partition:
    """Transpose of the Young diagram of ``p``."""
    p = Partition(p)
    if not p:
        return Partition()
    return Partition(sum(1 for x in p if x > i) for i in range(p[0]))


def lex_compare(p: Iterable[int], q: Iterable[int]) -> Order:
    p, q = tuple(p), tuple(q)
    for i in range(max(len(p), len(q))):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        if a != b:
            return Order.LT if a < b else Order.GT
    return Order.EQ


def dominates(p: Iterable[int], q: Iterable[int]) -> bool:
    """True iff ``q[i] >= p[i]`` for every ``i`` (does ``q`` dominate ``p``)."""
    p, q = tuple(p), tuple(q)
    return all(i < len(q) and q[i] >= x for i, x in enumerate(p) if x)


def majorizes(p: Iterable[int], q: Iterable[int]) -> bool:
    """Dominance order: every partial sum of ``p`` is at least the matching one of ``q``."""
    p, q = Partition(p), Partition(q)
    sp = sq = 0
    for i in range(max(len(p), len(q))):
        sp += p.part(i)
        sq += q.part(i)
        if sp < sq:
            return False
    return True


def delta_l(l: int, p: Iterable[int]) -> int:
    require_prime(l)
    return sum(l**x - 1 for x in p)


def delta_prime_l(l: int, p: Iterable[int]) -> int:
    require_prime(l)
    p = Partition(p)
    if not p:
        return 0
    return l ** p[0] - 1 + (l - 1) * sum(p[1:])


def shift_d(p: Iterable[int], t: int) -> Partition:
    """Drop the ``t`` largest parts."""
    if t < 0:
        raise ValueError("shift must be non-negative")
    return Partition(tuple(Partition(p))[t:])


def shift_dprime(p: Iterable[int]) -> Partition:
    """Decrement every part (the invariant of ``l*M`` for ``M`` of type ``p``)."""
    return Partition(x - 1 for x in Partition(p) if x > 1)


def f_l(l: int, p: Iterable[int]) -> Fraction:
    """``sum_i ((l^floor(p_i/2) + l^ceil(p_i/2)) / 2 - 1)`` as an exact rational."""
    require_prime(l)
    return sum(
        (Fraction(l ** (x // 2) + l ** ((x + 1) // 2), 2) - 1 for x in p),
        Fraction(0),
    )


def balanced_split(p: Iterable[int]) -> tuple[Partition, Partition]:
    """Split each part into its ceiling and floor halves.

    The ceilings go into the first component.
    """
    p = Partition(p)
    return (
        Partition((x + 1) // 2 for x in p),
        Partition(x // 2 for x in p),
    )


def merge(a: Iterable[int], b: Iterable[int]) -> Partition:
    """Invariant of the direct sum of groups of type ``a`` and ``b``."""
    return Partition.from_unsorted(itertools.chain(a, b))


def componentwise_sum(a: Iterable[int], b: Iterable[int]) -> Partition:
    a, b = tuple(a), tuple(b)
    n = max(len(a), len(b))
    return Partition(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))


@lru_cache(maxsize=None)
def count_partitions(n: int) -> int:
    return sum(1 for _ in partitions_of(n))


def min_split_delta_bruteforce(
    l: int, e: Iterable[int], budget: int = SPLIT_BUDGET
) -> int:
    """Minimum of ``delta_l(r) + delta_l(s)`` over admissible pairs ``(r, s)``.

    A pair is admissible when ``|r| + |s| = |e|`` and the componentwise sum
    ``r + s`` is lexicographically at least ``e``.  Every ordered pair of
    partitions with the right total is enumerated.
    """
    require_prime(l)
    e = Partition(e)
    n = e.size
    total = sum(count_partitions(k) * count_partitions(n - k) for k in range(n + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} candidate pairs exceed budget {budget}")
    best = None
    for k in range(n + 1):
        rs = list(partitions_of(k))
        ss = list(partitions_of(n - k))
        for r in rs:
            dr = delta_l(l, r)
            for s in ss:
                if componentwise_sum(r, s) < e:
                    continue
                value = dr + delta_l(l, s)
                if best is None or value < best:
                    best = value
    assert best is not None  # (e, ()) is always admissible
    return best
