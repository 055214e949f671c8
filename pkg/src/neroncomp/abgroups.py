"""Finite abelian groups, subgroup enumeration, and extension inequalities.

Two independent subgroup enumerators are provided for an l-group
``E = Z/l^e_1 + ... + Z/l^e_n``:

* ``iter_subgroup_types`` walks the lattices ``K <= L <= Z^n`` with
  ``K = diag(l^e_i) Z^n``, each in its unique Hermite form, so every
  subgroup ``B = L/K`` is produced exactly once.  This is the fast path.
* ``ConcreteLGroup.subgroups`` builds subgroups as explicit element sets by
  breadth-first closure.  It is slow but shares no code with the first
  method beyond the partition type, so the two cross-check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from sympy import factorint

from .errors import BudgetExceeded
from .exactlinalg.intmatrix import IntMatrix
from .exactlinalg.normalforms import cokernel_l_part
from .partitions import (
    Partition,
    componentwise_sum,
    conjugate,
    delta_l,
    delta_prime_l,
    dominates,
    f_l,
    merge,
    min_split_delta_bruteforce,
    partitions_of,
    require_prime,
    shift_d,
)

__all__ = [
    "AbGroup",
    "ConcreteLGroup",
    "from_invariant_factors",
    "delta",
    "iter_subgroup_types",
    "enumerate_subgroup_pairs",
    "check_extension_bounds",
    "check_subquotient_shift",
    "SplitReport",
    "check_lemma44",
    "check_lemma44_part3",
    "cyclic_from_two_step",
    "search_two_step_counterexample",
    "abelian_l_groups",
    "abelian_groups_up_to",
]

CONCRETE_BUDGET = 2**10


class AbGroup:
    """Finite abelian group stored as its primary decomposition ``{l: partition}``."""

    __slots__ = ("primary",)

    def __init__(self, primary: Mapping[int, Iterable[int]] | None = None):
        clean = {}
        for l, parts in (primary or {}).items():
            require_prime(int(l))
            p = parts if isinstance(parts, Partition) else Partition(parts)
            if p:
                clean[int(l)] = p
        self.primary = dict(sorted(clean.items()))

    @classmethod
    def trivial(cls) -> "AbGroup":
        return cls({})

    @classmethod
    def from_invariant_factors(cls, ns: Iterable[int]) -> "AbGroup":
        return from_invariant_factors(ns)

    def to_invariant_factors(self) -> list[int]:
        """Invariant factors ``n_1, n_2, ...`` with ``n_{i+1} | n_i``; ``[]`` for the trivial group."""
        length = max((len(p) for p in self.primary.values()), default=0)
        out = []
        for i in range(length):
            n = 1
            for l, p in self.primary.items():
                n *= l ** p.part(i)
            out.append(n)
        return out

    def part(self, l: int) -> Partition:
        return self.primary.get(l, Partition())

    @property
    def order(self) -> int:
        n = 1
        for l, p in self.primary.items():
            n *= l ** p.size
        return n

    def primes(self) -> list[int]:
        return list(self.primary)

    def is_trivial(self) -> bool:
        return not self.primary

    def direct_sum(self, other: "AbGroup") -> "AbGroup":
        keys = set(self.primary) | set(other.primary)
        return AbGroup({l: merge(self.part(l), other.part(l)) for l in keys})

    def delta(self) -> int:
        return sum(delta_l(l, p) for l, p in self.primary.items())

    def delta_prime(self) -> int:
        return sum(delta_prime_l(l, p) for l, p in self.primary.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbGroup) and self.primary == other.primary

    def __hash__(self) -> int:
        return hash(tuple(self.primary.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{l}: {list(p)}" for l, p in self.primary.items())
        return f"AbGroup({{{inner}}})"

    def to_json(self) -> dict[str, list[int]]:
        return {str(l): list(p) for l, p in self.primary.items()}

    @classmethod
    def from_json(cls, data) -> "AbGroup":
        if not isinstance(data, dict):
            raise ValueError("group must be a JSON object mapping primes to partitions")
        primary = {}
        for key, parts in data.items():
            try:
                l = int(key)
            except (TypeError, ValueError):
                raise ValueError(f"group key {key!r} is not an integer") from None
            if str(l) != str(key).strip():
                raise ValueError(f"group key {key!r} is not a decimal integer")
            require_prime(l)
            primary[l] = Partition.from_json(parts)
        return cls(primary)


def from_invariant_factors(ns: Iterable[int]) -> AbGroup:
    """Primary decomposition of ``Z/n_1 + Z/n_2 + ...`` (any order, any divisibility)."""
    parts: dict[int, list[int]] = {}
    for n in ns:
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"invariant factor {n!r} is not a positive integer")
        for l, k in factorint(n).items():
            parts.setdefault(int(l), []).append(int(k))
    return AbGroup({l: Partition.from_unsorted(v) for l, v in parts.items()})


def delta(g: AbGroup) -> int:
    return g.delta()


# type of a finite l-group given by relations


def _cokernel_type(rows: list[list[int]], l: int, n: int, top: int) -> Partition:
    """Type of ``Z^n / (row span)`` for a full-rank l-power-index lattice.

    ``top`` must exceed the exponent of the quotient; arithmetic is done in
    ``Z/l^top``, a chain ring, pivoting on the entry of least valuation.
    """
    q = l**top
    a = [[x % q for x in r] for r in rows]
    m = len(a)
    out = []
    for t in range(n):
        best = None
        for i in range(t, m):
            ri = a[i]
            for j in range(t, n):
                x = ri[j]
                if x:
                    v = 0
                    while x % l == 0:
                        x //= l
                        v += 1
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            raise ValueError("relations do not have full rank")
        v, bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        if bj != t:
            for r in a:
                r[t], r[bj] = r[bj], r[t]
        pv = l**v
        unit_inv = pow((a[t][t] // pv) % q, -1, q)
        rt = [(x * unit_inv) % q for x in a[t]]
        a[t] = rt
        for i in range(t + 1, m):
            x = a[i][t]
            if x:
                f = x // pv
                a[i] = [(y - f * z) % q for y, z in zip(a[i], rt)]
        # column operations clear the rest of row t without touching others
        out.append(v)
        for j in range(t + 1, n):
            rt[j] = 0
    if any(v >= top for v in out):
        raise ValueError("modulus too small for this quotient")
    return Partition.from_unsorted(out)


def iter_subgroup_types(l: int, e: Iterable[int]) -> Iterator[tuple[Partition, Partition]]:
    """Yield ``(type of B, type of E/B)`` once for every subgroup ``B`` of ``E``.

    Subgroups correspond to lattices ``L`` with ``K <= L <= Z^n``.  Each such
    ``L`` has a unique row basis ``H`` that is upper triangular with pivots
    ``l^c_i`` (``0 <= c_i <= e_i``) and entries above a pivot reduced modulo
    it.  Rows are chosen from the bottom up; the entries of row ``i`` are
    constrained exactly by ``l^e_i * eps_i in L``, so no candidate is ever
    discarded after the fact.
    """
    require_prime(l)
    e = tuple(Partition(e))
    n = len(e)
    if n == 0:
        yield Partition(), Partition()
        return
    top = e[0] + 1
    rows: list[list[int] | None] = [None] * n
    cexp = [0] * n

    def tails(i, s_exp, j, resid, h):
        # choose h_j for columns j..n-1 of row i
        if j == n:
            yield list(h)
            return
        cj = cexp[j]
        g = min(s_exp, cj)
        rj = resid[j]
        if rj % (l**g):
            return
        step = l ** (cj - g)
        h0 = (-(rj // l**g)) % step
        s = l**s_exp
        dj = l**cj
        row_j = rows[j]
        for k in range(l**g):
            hj = h0 + k * step
            total = s * hj + rj
            qj = total // dj
            if qj:
                new = resid[:]
                for c in range(j + 1, n):
                    new[c] -= qj * row_j[c]
            else:
                new = resid
            h.append(hj)
            yield from tails(i, s_exp, j + 1, new, h)
            h.pop()

    def place(i):
        if i < 0:
            yield
            return
        for c in range(e[i] + 1):
            cexp[i] = c
            for h in tails(i, e[i] - c, i + 1, [0] * n, []):
                rows[i] = [0] * i + [l**c] + h
                yield from place(i - 1)
        rows[i] = None

    for _ in place(n - 1):
        h = rows
        quotient = _cokernel_type(h, l, n, top)
        # coordinates of l^e_i eps_i in the basis h: x H = l^e_i eps_i
        coords = []
        for i in range(n):
            x = [0] * n
            for j in range(i, n):
                acc = (l ** e[i] if j == i else 0) - sum(x[k] * h[k][j] for k in range(i, j))
                x[j] = acc // h[j][j]
            coords.append(x)
        sub = _cokernel_type(coords, l, n, top)
        yield sub, quotient


class ConcreteLGroup:
    """``Z/l^s_1 + ... + Z/l^s_k`` with every element materialised.

    Elements are tuples ``(x_1, ..., x_k)`` with ``0 <= x_i < l^s_i``; they
    are indexed in mixed radix so subgroups can be stored as bitmasks.
    """

    def __init__(self, l: int, shape: Iterable[int], budget: int = CONCRETE_BUDGET):
        require_prime(l)
        self.l = l
        self.shape = Partition(shape)
        self.moduli = tuple(l**s for s in self.shape)
        self.order = l**self.shape.size
        if self.order > budget:
            raise BudgetExceeded(f"group of order {self.order} exceeds budget {budget}")
        self.elements = list(itertools.product(*[range(m) for m in self.moduli]))
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._add = None

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def _table(self):
        if self._add is None:
            idx = self.index
            els = self.elements
            self._add = [[idx[self.add(x, y)] for y in els] for x in els]
        return self._add

    def closure(self, mask: int, g: int) -> int:
        """Bitmask of the subgroup generated by the subgroup ``mask`` and element ``g``."""
        table = self._table()
        members = [i for i in range(self.order) if mask >> i & 1]
        out = mask
        # add multiples of g until they fall back into the subgroup
        mult = g
        coset_reps = []
        while not out >> mult & 1:
            coset_reps.append(mult)
            mult = table[mult][g]
        for r in coset_reps:
            for s in members:
                out |= 1 << table[r][s]
        return out

    def subgroups(self) -> list[int]:
        """All subgroups as bitmasks, by breadth-first closure from the trivial group."""
        start = 1  # element 0 is the identity
        seen = {start}
        layer = [start]
        while layer:
            nxt = []
            for mask in layer:
                for g in range(1, self.order):
                    if mask >> g & 1:
                        continue
                    bigger = self.closure(mask, g)
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
            layer = nxt
        return sorted(seen, key=lambda m: (bin(m).count("1"), m))

    def members(self, mask: int) -> list[tuple[int, ...]]:
        return [self.elements[i] for i in range(self.order) if mask >> i & 1]

    def element_order_exp(self, x: Sequence[int]) -> int:
        """``k`` with ``l^k`` the order of ``x``."""
        k = 0
        y = tuple(x)
        while any(y):
            y = tuple((self.l * a) % m for a, m in zip(y, self.moduli))
            k += 1
        return k

    def subgroup_type(self, mask: int) -> Partition:
        """Type from the counts ``|B[l^k]|`` of elements killed by ``l^k``."""
        counts: dict[int, int] = {}
        for x in self.members(mask):
            k = self.element_order_exp(x)
            counts[k] = counts.get(k, 0) + 1
        cumulative = []
        total = 0
        for k in range(max(counts) + 1):
            total += counts.get(k, 0)
            cumulative.append(total)
        logs = []
        for c in cumulative:
            v, x = 0, c
            while x > 1:
                x //= self.l
                v += 1
            logs.append(v)
        jumps = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        return conjugate(Partition(jumps))

    def quotient_type(self, mask: int) -> Partition:
        """Type of ``E/B`` from the relation matrix ``[diag(l^s) | generators of B]``."""
        gens = self.generators(mask)
        k = len(self.moduli)
        cols = [[m if r == c else 0 for r in range(k)] for c, m in enumerate(self.moduli)]
        cols += [list(g) for g in gens]
        rel = IntMatrix.from_columns(cols)
        part, corank = cokernel_l_part(rel, self.l)
        assert corank == 0
        return part

    def generators(self, mask: int) -> list[tuple[int, ...]]:
        """A generating set of the subgroup, built greedily."""
        gens = []
        current = 1
        for i in range(1, self.order):
            if mask >> i & 1 and not current >> i & 1:
                current = self.closure(current, i)
                gens.append(self.elements[i])
            if current == mask:
                break
        return gens

    def sub_pairs(self) -> set[tuple[Partition, Partition]]:
        return {(self.subgroup_type(m), self.quotient_type(m)) for m in self.subgroups()}


def enumerate_subgroup_pairs(
    g: ConcreteLGroup, method: str = "lattice"
) -> set[tuple[Partition, Partition]]:
    """The set of ``(type of B, type of G/B)`` over all subgroups ``B`` of ``g``."""
    if method == "lattice":
        return set(iter_subgroup_types(g.l, g.shape))
    if method == "elements":
        return g.sub_pairs()
    raise ValueError(f"unknown method {method!r}")


# inequalities between types in an extension 0 -> B -> E -> A -> 0


def check_extension_bounds(a: Iterable[int], b: Iterable[int], e: Iterable[int]) -> bool:
    """``merge(a, b) <= e <= a + b`` lexicographically, given matching sizes."""
    a, b, e = Partition(a), Partition(b), Partition(e)
    if a.size + b.size != e.size:
        return False
    return merge(a, b) <= e <= componentwise_sum(a, b)


def check_subquotient_shift(a: Iterable[int], e: Iterable[int], t: int) -> bool:
    """``a_i >= e_{i+t}`` for every ``i``."""
    return dominates(shift_d(e, t), a)


@dataclass(frozen=True)
class SplitReport:
    nonnegative: bool
    subadditive: bool
    equality_iff_split: bool

    @property
    def ok(self) -> bool:
        return self.nonnegative and self.subadditive and self.equality_iff_split


def check_lemma44(e: Iterable[int], a: Iterable[int], b: Iterable[int], l: int) -> SplitReport:
    """Positivity and superadditivity of ``delta_l`` on an extension with types ``e, a, b``."""
    e, a, b = Partition(e), Partition(a), Partition(b)
    de, da, db = delta_l(l, e), delta_l(l, a), delta_l(l, b)
    nonneg = all((d > 0) == bool(p) and d >= 0 for d, p in ((de, e), (da, a), (db, b)))
    split = e == merge(a, b)
    return SplitReport(
        nonnegative=nonneg,
        subadditive=de >= da + db,
        equality_iff_split=(de == da + db) == split,
    )


def check_lemma44_part3(
    e: Iterable[int], epp: Iterable[int], l: int, a_exp: int, b_log: int
) -> bool:
    """``delta_l(e) <= delta_l(e'') + b (l^a - l^(a-1))`` for ``M`` killed by ``l^a``, ``|M'| = l^b``."""
    require_prime(l)
    e, epp = Partition(e), Partition(epp)
    if e.part(0) > a_exp or b_log < 0:
        raise ValueError("precondition violated: l^a must kill M and b must be non-negative")
    if a_exp == 0:
        slope = Fraction(0)
    else:
        slope = Fraction(l**a_exp - l ** (a_exp - 1))
    return delta_l(l, e) <= delta_l(l, epp) + b_log * slope


def cyclic_from_two_step(two_step: Sequence[Iterable[int]]) -> bool:
    """Conclusion for a filtration ``M = M^0 > ... > M^r = 0`` given the types of ``M^i/M^(i+2)``.

    Returns True exactly when every supplied two-step quotient is cyclic, in
    which case ``M`` itself must be cyclic.  At least one two-step quotient
    is required: with ``r = 1`` the hypothesis is empty and says nothing.
    """
    quotients = [Partition(q) for q in two_step]
    if not quotients:
        raise ValueError("need a filtration of length at least 2")
    return all(len(q) <= 1 for q in quotients)


def search_two_step_counterexample(l: int, shape: Iterable[int]) -> tuple[int, list[list[int]] | None]:
    """Search all strictly descending filtrations with cyclic two-step quotients.

    Returns ``(number of such filtrations found, counterexample or None)``,
    where a counterexample would be such a filtration on a non-cyclic group.
    Partial filtrations are extended only while every two-step quotient
    seen so far is cyclic.
    """
    g = ConcreteLGroup(l, shape)
    subs = g.subgroups()
    full = subs[-1]
    below = {s: [t for t in subs if t != s and t & s == t] for s in subs}

    def cyclic_quotient(big: int, small: int) -> bool:
        # |big/small| elements; cyclic iff some element generates modulo small
        size = bin(big).count("1") // bin(small).count("1")
        if size == 1:
            return True
        table = g._table()
        for x in range(g.order):
            if big >> x & 1 and not small >> x & 1:
                # order of x modulo small
                k, y = 1, x
                while not small >> y & 1:
                    y = table[y][x]
                    k += 1
                if k == size:
                    return True
        return False

    found = 0
    witness = None
    is_cyclic = len(g.shape) <= 1

    def extend(chain):
        nonlocal found, witness
        last = chain[-1]
        if last == 1:
            if len(chain) >= 3:
                found += 1
                if not is_cyclic and witness is None:
                    witness = [list(map(list, g.members(m))) for m in chain]
            return
        for nxt in below[last]:
            if len(chain) >= 2 and not cyclic_quotient(chain[-2], nxt):
                continue
            extend(chain + [nxt])

    extend([full])
    return found, witness


def abelian_l_groups(l: int, max_exp: int) -> Iterator[Partition]:
    """Types of all nontrivial l-groups of order at most ``l^max_exp``."""
    for k in range(1, max_exp + 1):
        yield from partitions_of(k)


def abelian_groups_up_to(max_order: int, exclude: Iterable[int] = ()) -> Iterator[AbGroup]:
    """Every finite abelian group of order ``<= max_order`` whose order avoids ``exclude``."""
    banned = set(exclude)
    for n in range(1, max_order + 1):
        fac = factorint(n)
        if banned & set(fac):
            continue
        choices = [[(l, p) for p in partitions_of(k)] for l, k in sorted(fac.items())]
        for combo in itertools.product(*choices):
            yield AbGroup({l: p for l, p in combo})
