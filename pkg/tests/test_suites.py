import pytest

from neroncomp.suites import DEFAULT_BUDGETS, SUITES, invariant_factor_lists, run_suite

SMALL = {
    "lemma41": 32,
    "lemma43-dominance": 7,
    "lemma44": 32,
    "lemma45": 15,
    "lemma48": 16,
    "lemma410": 32,
    "lemma411": 4,
    "thm33": 10,
    "thm61": 3,
    "delta": 128,
}


def test_every_suite_has_a_default_budget():
    assert set(SUITES) == set(DEFAULT_BUDGETS)
    assert set(SMALL) | {"lemma43"} == set(SUITES)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_small_suites_pass(name):
    res = run_suite(name, seed=1, budget=SMALL[name])
    assert res.passed, res.failures
    assert res.checked > 0
    data = res.to_json()
    assert data["suite"] == name and data["budget"] == SMALL[name]


def test_suites_are_deterministic():
    a = run_suite("lemma45", seed=7, budget=10).to_json()
    b = run_suite("lemma45", seed=7, budget=10).to_json()
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_lexicographic_suite_reports_witnesses():
    assert run_suite("lemma43", budget=7).passed
    res = run_suite("lemma43", budget=9)
    assert not res.passed
    assert {"l": 2, "smaller": [3, 3, 3], "larger": [4, 1, 1, 1, 1, 1], "deltas": [21, 20]} in res.failures


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("lemma99")


def test_invariant_factor_lists():
    lists = list(invariant_factor_lists(6))
    assert [] in lists and [6] in lists and [2, 2, 2] in lists and [4, 2] in lists
    assert [3, 2] not in lists
    assert all(sum(ns) <= 6 for ns in lists)
    assert len(lists) == len({tuple(ns) for ns in lists})
