"""Acceptance criteria, each run at its stated tolerance and time limit.

Every test records its outcome through ``record_criterion``; the terminal
summary prints one pass/fail line per criterion.
"""

import time

import pytest

from neroncomp.abgroups import AbGroup
from neroncomp.classify import RealizabilityQuery, is_realizable
from neroncomp.exactlinalg import IntMatrix, ModMatrix, mod_diagonalize
from neroncomp.models import (
    compute_phi,
    model_example52,
    model_example53,
    model_example54,
    model_example55,
)
from neroncomp.partitions import Partition
from neroncomp.suites import EX52_CASES, EX53_CASES, EX54_CASES, EX55_CASES, run_suite

P = Partition


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_twisted_tate_component_groups(record_criterion):
    title, limit = "twisted Tate curves: Z/l^i + Z/l^i, or Z/2^(i+1) + Z/2^(i-1) at l = 2", 5
    wrong = []
    with Timer() as clock:
        for l, i in EX52_CASES:
            expected = P([i + 1, i - 1]) if l == 2 else P([i, i])
            got = compute_phi(model_example52(l, i)).phi
            if got != expected:
                wrong.append(f"l={l} i={i}: got {list(got)}, want {list(expected)}")
    record_criterion(1, title, limit, "all cases", not wrong, clock.seconds, "; ".join(wrong))
    assert not wrong
    assert clock.seconds < limit


def test_cyclotomic_quotient_component_groups(record_criterion):
    title, limit = "cyclotomic quotients: Phi = Phi^1 = Z/l^i, Phi^2 = 0", 1
    wrong = []
    with Timer() as clock:
        for l, i in EX53_CASES:
            rep = compute_phi(model_example53(l, i))
            if not (rep.phi == P([i]) and rep.layer(1, 4) == P([i]) and rep.layer(2, 4) == P()):
                wrong.append(f"l={l} i={i}: layers {rep.to_json()['layers']}")
    record_criterion(2, title, limit, "all cases", not wrong, clock.seconds, "; ".join(wrong))
    assert not wrong
    assert clock.seconds < limit


def _cyclic_order(model):
    """Independent check: Smith form of tau - 1 modulo l^N."""
    m = ModMatrix.from_int(model.tau - IntMatrix.identity(model.rank), model.l, model.N)
    return P.from_unsorted([e for e in mod_diagonalize(m) if e])


def test_three_step_twisted_component_groups(record_criterion):
    title, limit = "three-step twisted lattices: cyclic of order l^(2r+s), graded (l^r, l^s, l^r, 1)", 10
    wrong = []
    with Timer() as clock:
        for l, r, s in EX54_CASES:
            reports = []
            for N in (2 * r + s + 2, 2 * r + s + 4):
                # construction raises if the corank-1 check on M/M^2 fails
                model = model_example54(l, r, s, N)
                rep = compute_phi(model)
                reports.append(rep)
                if model.rank > 10:
                    wrong.append(f"{(l, r, s)}: rank {model.rank} > 10")
                if rep.phi != P([2 * r + s]) or _cyclic_order(model) != rep.phi:
                    wrong.append(f"{(l, r, s)} N={N}: Phi {list(rep.phi)}")
                if rep.graded != (P([r]), P([s]), P([r]), P()):
                    wrong.append(f"{(l, r, s)} N={N}: graded {[list(g) for g in rep.graded]}")
            if reports[0] != reports[1]:
                wrong.append(f"{(l, r, s)}: changes under N -> N + 2")
    record_criterion(3, title, limit, "all cases", not wrong, clock.seconds, "; ".join(wrong))
    assert not wrong
    assert clock.seconds < limit


def test_two_step_twisted_component_groups(record_criterion):
    title, limit = "two-step twisted lattices: cyclic of order l^(2r)", 10
    wrong = []
    with Timer() as clock:
        for l, r in EX55_CASES:
            reports = [compute_phi(model_example55(l, r, N)) for N in (2 * r + 2, 2 * r + 4)]
            if reports[0].phi != P([2 * r]) or reports[0] != reports[1]:
                wrong.append(f"l={l} r={r}: Phi {list(reports[0].phi)}")
    record_criterion(4, title, limit, "all cases", not wrong, clock.seconds, "; ".join(wrong))
    assert not wrong
    assert clock.seconds < limit


def test_filtration_bounds_suite(record_criterion):
    title, limit = "six filtration bounds on examples, Tate products (sum <= 12) and 500 random sums", 60
    res = run_suite("thm33", seed=0, budget=500)
    detail = f"{res.checked} models, {res.details.get('aggregate_checks')} multi-prime checks"
    record_criterion(5, title, limit, "suite thm33", res.passed, res.seconds, detail)
    assert res.passed, res.failures
    assert res.seconds < limit


EXHAUSTIVE_TITLE = "exhaustive oracles over subgroup pairs, partitions and two-step chains"
EXHAUSTIVE_LIMIT = 600
EXHAUSTIVE_SECONDS: list[float] = []

EXHAUSTIVE_PARTS = [
    ("lemma41", 256, "extension type between merge and sum"),
    ("lemma410", 256, "quotients by t-generated subgroups, t <= 2"),
    ("lemma44", 256, "delta subadditive, equality iff split, torsion bound"),
    ("lemma411", 8, "minimum split value equals 2 f_l(e) and exceeds f_l(e)"),
    ("lemma48", 64, "no non-cyclic group with cyclic two-step filtration"),
    ("lemma43-dominance", 10, "delta strictly increasing in dominance order"),
]


@pytest.mark.parametrize("suite, budget, what", EXHAUSTIVE_PARTS, ids=[p[0] for p in EXHAUSTIVE_PARTS])
def test_exhaustive_oracles(record_criterion, suite, budget, what):
    res = run_suite(suite, seed=0, budget=budget)
    EXHAUSTIVE_SECONDS.append(res.seconds)
    detail = f"{what}; {res.checked} checks"
    record_criterion(6, EXHAUSTIVE_TITLE, EXHAUSTIVE_LIMIT, f"suite {suite}", res.passed, res.seconds, detail)
    assert res.passed, res.failures


@pytest.mark.xfail(
    strict=True,
    reason=(
        "delta_l is not strictly increasing in lexicographic order: at l = 2, "
        "(4,1,1,1,1,1) > (3,3,3) yet delta_2 is 20 < 21. The dominance-order "
        "version holds and is checked separately."
    ),
)
def test_exhaustive_lexicographic_monotonicity(record_criterion):
    res = run_suite("lemma43", seed=0, budget=10)
    EXHAUSTIVE_SECONDS.append(res.seconds)
    shown = res.failures[:3]
    detail = f"{len(res.failures) + res.details.get('suppressed_failures', 0)} violations, e.g. {shown}"
    part = "suite lemma43 (lexicographic)"
    record_criterion(6, EXHAUSTIVE_TITLE, EXHAUSTIVE_LIMIT, part, res.passed, res.seconds, detail)
    assert res.passed, detail


def test_exhaustive_oracles_time_budget():
    # the first sweep pays for the shared subgroup enumeration, so the sum covers the full cost
    assert sum(EXHAUSTIVE_SECONDS) < EXHAUSTIVE_LIMIT


def test_coinvariant_bound_suite(record_criterion):
    title, limit = "coinvariant bounds on 200 random automorphisms per l in {2, 3}", 120
    res = run_suite("lemma45", seed=0, budget=200)
    detail = f"{res.checked} automorphisms, {res.details['equality_cases']} equality cases"
    record_criterion(7, title, limit, "suite lemma45", res.passed, res.seconds, detail)
    assert res.passed, res.failures
    assert res.seconds < limit


def test_realizability_sweep(record_criterion):
    title, limit = "planner agrees with realizability for |G| <= 200, d <= 8, p in {0, 5}", 900
    res = run_suite("thm61", seed=0, budget=8)
    detail = f"{res.checked} queries, {res.details['realizable']} realizable"
    record_criterion(8, title, limit, "suite thm61", res.passed, res.seconds, detail)
    assert res.passed, res.failures
    assert res.seconds < limit


def test_spot_values(record_criterion):
    title, limit = "Z/9 spot values and delta >= delta' up to order 2^10", 600
    with Timer() as clock:
        z9 = AbGroup({3: (2,)})
        spot = (
            is_realizable(RealizabilityQuery(z9, 1, 0, 0, 1)) is False
            and is_realizable(RealizabilityQuery(z9, 2, 0, 0, 2)) is True
        )
    record_criterion(9, title, limit, "Z/9 with u = 1 and u = 2", spot, clock.seconds)
    res = run_suite("delta", seed=0, budget=2**10)
    record_criterion(9, title, limit, "suite delta", res.passed, res.seconds, f"{res.checked} l-parts")
    assert spot
    assert res.passed, res.failures
