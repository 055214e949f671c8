"""Reproducible verification suites run by ``neroncomp verify`` and the acceptance tests.

Each suite checks a family of inequalities against independent oracles and
returns a ``SuiteResult`` listing failure witnesses.  Results depend only on
``(seed, budget)``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from sympy import Poly, cyclotomic_poly, symbols

from .abgroups import (
    AbGroup,
    abelian_groups_up_to,
    check_extension_bounds,
    check_lemma44,
    check_lemma44_part3,
    check_subquotient_shift,
    iter_subgroup_types,
    search_two_step_counterexample,
)
from .classify import RealizabilityQuery, end_to_end_check, is_realizable, plan, verify_plan
from .errors import BudgetExceeded
from .exactlinalg.automorphisms import check_coinvariant_bound
from .exactlinalg.intmatrix import IntMatrix
from .exactlinalg.polys import companion, cyclotomic_poly as l_cyclotomic, lambda_mult_matrix
from .exactlinalg.unimodular import random_unimodular_pair
from .models import (
    abelian_pad_model,
    check_cor34,
    check_thm33,
    compute_phi,
    direct_sum,
    model_example51,
    model_example52,
    model_example53,
    model_example54,
    model_example55,
    model_unipotent_elliptic,
    unipotent_pad_model,
    with_primes,
)
from .partitions import (
    Partition,
    balanced_split,
    delta_l,
    delta_prime_l,
    f_l,
    majorizes,
    min_split_delta_bruteforce,
    partitions_of,
)

__all__ = ["SuiteResult", "SUITES", "DEFAULT_BUDGETS", "run_suite", "subgroup_pairs"]

MAX_WITNESSES = 20


@dataclass
class SuiteResult:
    name: str
    seed: int
    budget: int
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, witness: dict) -> None:
        if len(self.failures) < MAX_WITNESSES:
            self.failures.append(witness)
        else:
            self.details["suppressed_failures"] = self.details.get("suppressed_failures", 0) + 1

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "seed": self.seed,
            "budget": self.budget,
            "checked": self.checked,
            "failures": self.failures,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }


@lru_cache(maxsize=None)
def subgroup_pairs(l: int, e: Partition) -> frozenset:
    """Distinct ``(type of B, type of E/B)`` over all subgroups ``B`` of ``E``."""
    return frozenset(iter_subgroup_types(l, e))


def _l_group_types(max_order: int):
    """``(l, e)`` for l in {2, 3} and every nontrivial l-group of order ``<= max_order``."""
    for l in (2, 3):
        k = 1
        while l**k <= max_order:
            for e in partitions_of(k):
                yield l, e
            k += 1


def _pair_sweep(res: SuiteResult, check: Callable) -> None:
    for l, e in _l_group_types(res.budget):
        for b, a in sorted(subgroup_pairs(l, e)):
            res.checked += 1
            bad = check(l, e, b, a)
            if bad:
                res.fail({"l": l, "e": list(e), "b": list(b), "a": list(a), "violated": bad})


def suite_lemma41(res: SuiteResult) -> None:
    """Type of an extension lies between the merge and the sum of the outer types."""
    _pair_sweep(res, lambda l, e, b, a: None if check_extension_bounds(a, b, e) else "merge <= e <= sum")


def suite_lemma410(res: SuiteResult) -> None:
    """Quotient by a subgroup with at most ``t`` generators keeps ``a_i >= e_(i+t)``."""

    def check(l, e, b, a):
        bad = [t for t in (0, 1, 2) if len(b) <= t and not check_subquotient_shift(a, e, t)]
        return f"t in {bad}" if bad else None

    _pair_sweep(res, check)


def suite_lemma44(res: SuiteResult) -> None:
    """Positivity, superadditivity with equality exactly for split extensions, and the exponent bound."""

    def check(l, e, b, a):
        rep = check_lemma44(e, a, b, l)
        problems = [k for k in ("nonnegative", "subadditive", "equality_iff_split") if not getattr(rep, k)]
        if e and not check_lemma44_part3(e, a, l, e[0], b.size):
            problems.append("exponent bound")
        return ", ".join(problems) or None

    _pair_sweep(res, check)


def suite_lemma411(res: SuiteResult) -> None:
    """Minimum of ``delta(r) + delta(s)`` over admissible splits equals the balanced value ``2 f_l(e)``.

    Also checks the stated lower bound ``f_l(e)`` on every subgroup pair of
    groups with order at most ``2^budget`` (capped at 256, which covers
    ``2^8`` and ``3^5``).
    """
    table = []
    for l in (2, 3):
        for n in range(res.budget + 1):
            for e in partitions_of(n):
                res.checked += 1
                brute = min_split_delta_bruteforce(l, e)
                r, s = balanced_split(e)
                balanced = delta_l(l, r) + delta_l(l, s)
                f = f_l(l, e)
                table.append({"l": l, "e": list(e), "min": brute, "two_f": str(2 * f)})
                if not (brute == balanced == 2 * f and brute >= f):
                    res.fail({"l": l, "e": list(e), "min": brute, "balanced": balanced, "f": str(f)})
    res.details["minima"] = len(table)
    pairs = SuiteResult("lemma411-pairs", res.seed, min(2**res.budget, 256))
    _pair_sweep(
        pairs,
        lambda l, e, b, a: None if delta_l(l, a) + delta_l(l, b) >= f_l(l, e) else "delta(a)+delta(b) >= f(e)",
    )
    res.checked += pairs.checked
    for w in pairs.failures:
        res.fail(w)


def suite_lemma43(res: SuiteResult) -> None:
    """``delta_l`` is strictly increasing for the lexicographic order on partitions of ``N``.

    Compares every lexicographically ordered pair.  This statement is false
    for small ``l`` (for ``l = 2``: ``(4,1,1,1,1,1) > (3,3,3)`` but
    ``delta_2`` is 20 against 21), so this suite reports those witnesses.
    """
    for l in (2, 3):
        for n in range(1, res.budget + 1):
            parts = sorted(partitions_of(n))
            values = [delta_l(l, p) for p in parts]
            for j, (q, dq) in enumerate(zip(parts, values)):
                for p, dp in zip(parts[j + 1 :], values[j + 1 :]):
                    res.checked += 1
                    if not dp > dq:
                        res.fail({"l": l, "smaller": list(q), "larger": list(p), "deltas": [dq, dp]})


def suite_lemma43_dominance(res: SuiteResult) -> None:
    """``delta_l`` is strictly increasing for the dominance order on partitions of ``N``.

    Moving a box from a shorter column to a longer one raises ``delta_l``,
    and two partitions are comparable in dominance order exactly when such
    moves connect them.
    """
    for l in (2, 3):
        for n in range(1, res.budget + 1):
            parts = list(partitions_of(n))
            values = [delta_l(l, p) for p in parts]
            for p, dp in zip(parts, values):
                for q, dq in zip(parts, values):
                    if p != q and majorizes(p, q):
                        res.checked += 1
                        if not dp > dq:
                            res.fail({"l": l, "larger": list(p), "smaller": list(q), "deltas": [dq, dp]})


def suite_lemma48(res: SuiteResult) -> None:
    """No filtration with cyclic two-step quotients lives on a non-cyclic group."""
    total = 0
    for l in (2, 3, 5, 7):
        k = 1
        while l**k <= res.budget:
            for e in partitions_of(k):
                res.checked += 1
                count, witness = search_two_step_counterexample(l, e)
                total += count
                if witness is not None:
                    res.fail({"l": l, "e": list(e), "chain": witness})
            k += 1
    res.details["filtrations_examined"] = total


_X = symbols("x")


def _foreign_cyclotomics(l: int) -> list[list[int]]:
    """Cyclotomic polynomials of small degree whose index is not a power of ``l`` (and not 1)."""
    out = []
    for n in range(2, 13):
        m = n
        while m % l == 0:
            m //= l
        if m == 1:
            continue
        coeffs = Poly(cyclotomic_poly(n, _X), _X).all_coeffs()[::-1]
        if len(coeffs) - 1 <= 4:
            out.append([int(c) for c in coeffs])
    return out


def random_cyclotomic_auto(l: int, rng: random.Random, max_rank: int = 12) -> IntMatrix:
    """Unimodular conjugate of a block sum of cyclotomic companions and ring blocks."""
    pieces = []
    rank = 0
    foreign = _foreign_cyclotomics(l)
    target = rng.randint(1, max_rank)
    while rank < target:
        kind = rng.random()
        if kind < 0.45:
            i = rng.randint(1, 3)
            block = companion(l_cyclotomic(l, i))
        elif kind < 0.75:
            block = lambda_mult_matrix(l, 1, rng.randint(1, 2))
        else:
            block = companion(rng.choice(foreign))
        if rank + block.rows > max_rank:
            if rank:
                break
            continue
        pieces.append(block)
        rank += block.rows
    sigma = IntMatrix.block_diag(pieces)
    u, u_inv = random_unimodular_pair(rank, rng)
    return u @ sigma @ u_inv


def suite_lemma45(res: SuiteResult) -> None:
    """Coinvariant bound, rank bound and the equality structure for random automorphisms."""
    equality_cases = 0
    for l in (2, 3):
        rng = random.Random(f"{res.seed}-lemma45-{l}")
        for _ in range(res.budget):
            sigma = random_cyclotomic_auto(l, rng)
            rep = check_coinvariant_bound(sigma, l)
            res.checked += 1
            equality_cases += rep.equality
            if not rep.ok:
                res.fail({"l": l, "sigma": sigma.to_json(), "coinv": list(rep.coinv), "bound": rep.bound})
    res.details["equality_cases"] = equality_cases


# models for the theorem suites

EX52_CASES = [(3, 1), (3, 2), (5, 1), (5, 2), (2, 1), (2, 2), (2, 3)]
EX53_CASES = [(3, 1), (3, 2), (5, 1), (5, 2)]
EX54_CASES = [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1)]
EX55_CASES = [(2, 1), (2, 2), (3, 1)]
POOL_PRECISION = 14


def example_models():
    """Every twisted and cyclotomic model used by the reproduction checks."""
    out = [model_example52(l, i) for l, i in EX52_CASES]
    out += [model_example53(l, i) for l, i in EX53_CASES]
    out += [model_example54(l, r, s, 2 * r + s + 2) for l, r, s in EX54_CASES]
    out += [model_example55(l, r, 2 * r + 2) for l, r in EX55_CASES]
    return out


def invariant_factor_lists(max_sum: int):
    """Divisibility chains ``n_1, n_2, ...`` with ``n_(i+1) | n_i``, entries ``>= 2``, sum ``<= max_sum``."""

    def grow(prefix, remaining):
        yield list(prefix)
        last = prefix[-1] if prefix else None
        for n in range(2, remaining + 1):
            if last is None or last % n == 0:
                yield from grow(prefix + [n], remaining - n)

    yield from grow([], max_sum)


def _primes_to_check(ns):
    primes = {2, 3}
    for n in ns:
        primes |= set(AbGroup.from_invariant_factors([n]).primes())
    return sorted(primes)


def _random_summand(l: int, rng: random.Random):
    choices = ["ex51", "ex52", "klein", "cyclic2", "abelian", "unipotent"]
    if l != 2:
        choices.append("ex53")
    if l in (2, 3):
        choices += ["ex54", "ex55"]
    kind = rng.choice(choices)
    if kind == "ex51":
        return model_example51([rng.randint(1, 12) for _ in range(rng.randint(1, 3))], l)
    if kind == "ex52":
        return model_example52(l, rng.randint(1, 2))
    if kind == "ex53":
        return model_example53(l, rng.randint(1, 2 if l < 5 else 1))
    if kind == "ex54":
        r, s = (1, rng.randint(1, 2)) if l == 2 else (1, 1)
        return model_example54(l, r, s, POOL_PRECISION)
    if kind == "ex55":
        return model_example55(l, rng.randint(1, 2) if l == 2 else 1, POOL_PRECISION)
    if kind == "klein":
        return model_unipotent_elliptic("klein", l)
    if kind == "cyclic2":
        return model_unipotent_elliptic("cyclic2", l)
    if kind == "abelian":
        return abelian_pad_model(rng.randint(1, 2), l)
    return unipotent_pad_model(rng.randint(1, 2), l)


def _check_model(res: SuiteResult, model) -> None:
    rep = compute_phi(model)
    verdict = check_thm33(model, rep)
    res.checked += 1
    if not verdict.ok:
        res.fail({"model": model.name, "l": model.l, "verdict": verdict.to_json()})


def suite_thm33(res: SuiteResult) -> None:
    """All six filtration bounds on the example models, Tate-curve products and random sums.

    Exact random sums are also checked at every prime in {2, 3, 5} at once
    against the aggregate bounds.
    """
    for model in example_models():
        _check_model(res, model)
    for ns in invariant_factor_lists(12):
        for l in _primes_to_check(ns):
            _check_model(res, model_example51(ns, l))
    rng = random.Random(f"{res.seed}-thm33")
    aggregate = 0
    for _ in range(res.budget):
        l = rng.choice((2, 3, 5))
        model = direct_sum([_random_summand(l, rng) for _ in range(rng.randint(1, 4))])
        _check_model(res, model)
        if model.mode == "exact":
            views = with_primes(model, (2, 3, 5))
            verdict = check_cor34([(v, compute_phi(v)) for v in views])
            aggregate += 1
            if not verdict.ok:
                res.fail({"model": model.name, "aggregate": verdict.to_json()})
    res.details["aggregate_checks"] = aggregate


def suite_thm61(res: SuiteResult, max_order: int = 200) -> None:
    """Planner succeeds exactly on realizable queries and every plan checks out.

    Ranges over all groups of order ``<= max_order``, ``p in {0, 5}`` and all
    ``(t, a, u)`` with ``t + a + u <= budget``.
    """
    groups = list(abelian_groups_up_to(max_order))
    realizable = 0
    for G in groups:
        for p in (0, 5):
            if p and p in G.primes():
                continue
            for d in range(res.budget + 1):
                for t in range(d + 1):
                    for a in range(d - t + 1):
                        q = RealizabilityQuery(G, d, t, a, d - t - a, p)
                        res.checked += 1
                        expect = is_realizable(q)
                        try:
                            pl = plan(q)
                        except ValueError:
                            pl = None
                        if (pl is not None) != expect:
                            res.fail({"query": q.to_json(), "problem": "plan disagrees with predicate"})
                            continue
                        if pl is None:
                            continue
                        realizable += 1
                        if not verify_plan(pl, q):
                            res.fail({"query": q.to_json(), "problem": "verify_plan"})
                        elif not end_to_end_check(pl):
                            res.fail({"query": q.to_json(), "problem": "end_to_end_check"})
    res.details["groups"] = len(groups)
    res.details["realizable"] = realizable


def suite_delta(res: SuiteResult) -> None:
    """``delta_l >= delta'_l`` on every group of order ``<= budget``, equal exactly when ``e_i <= 1`` for ``i >= 2``."""
    for G in abelian_groups_up_to(res.budget):
        for l in G.primes():
            e = G.part(l)
            res.checked += 1
            d, dp = delta_l(l, e), delta_prime_l(l, e)
            if d < dp or (d == dp) != all(x <= 1 for x in e[1:]):
                res.fail({"G": G.to_json(), "l": l, "delta": d, "delta_prime": dp})


SUITES: dict[str, Callable[[SuiteResult], None]] = {
    "lemma41": suite_lemma41,
    "lemma43": suite_lemma43,
    "lemma43-dominance": suite_lemma43_dominance,
    "lemma44": suite_lemma44,
    "lemma45": suite_lemma45,
    "lemma48": suite_lemma48,
    "lemma410": suite_lemma410,
    "lemma411": suite_lemma411,
    "thm33": suite_thm33,
    "thm61": suite_thm61,
    "delta": suite_delta,
}

# group-order bounds for the subgroup sweeps, N for partitions, sample counts, or max dimension
DEFAULT_BUDGETS = {
    "lemma41": 256,
    "lemma43": 10,
    "lemma43-dominance": 10,
    "lemma44": 256,
    "lemma45": 200,
    "lemma48": 64,
    "lemma410": 256,
    "lemma411": 8,
    "thm33": 500,
    "thm61": 8,
    "delta": 1024,
}


def run_suite(name: str, seed: int = 0, budget: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    res = SuiteResult(name, seed, DEFAULT_BUDGETS[name] if budget is None else budget)
    start = time.perf_counter()
    try:
        SUITES[name](res)
    except BudgetExceeded as exc:
        res.fail({"problem": f"budget exceeded: {exc}"})
    res.seconds = time.perf_counter() - start
    return res
