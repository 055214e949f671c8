import warnings
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neroncomp.abgroups import from_invariant_factors
from neroncomp.errors import ModelError, PrecisionError
from neroncomp.exactlinalg import IntMatrix, ModMatrix, cokernel_l_part, mod_diagonalize
from neroncomp.exactlinalg.automorphisms import CycloMultiplicities
from neroncomp.models import (
    GaloisLatticeModel,
    Ranks,
    abelian_pad_model,
    check_cor34,
    check_thm33,
    compute_phi,
    derived_multiplicities,
    direct_sum,
    model_example51,
    model_example52,
    model_example53,
    model_example54,
    model_example55,
    model_unipotent_elliptic,
    trivial_model,
    unipotent_pad_model,
    with_prime,
)
from neroncomp.partitions import Partition

P = Partition


def coker_oracle(model):
    """l-part of ``U/(tau - 1)U``, which is Phi whenever ``V^0 = U``."""
    n = model.rank
    m = model.tau - IntMatrix.identity(n)
    if model.mode == "exact":
        typ, corank = cokernel_l_part(m, model.l)
        assert corank == 0
        return typ
    exps = mod_diagonalize(ModMatrix.from_int(m, model.l, model.N))
    assert model.N not in exps
    return P.from_unsorted([e for e in exps if e])


# frozen expected values for the twisted models


@pytest.mark.parametrize(
    "l, i, expected",
    [(3, 1, (1, 1)), (3, 2, (2, 2)), (5, 1, (1, 1)), (5, 2, (2, 2)), (2, 1, (2,)), (2, 2, (3, 1)), (2, 3, (4, 2))],
)
def test_twisted_tate_examples(l, i, expected):
    model = model_example52(l, i)
    rep = compute_phi(model)
    assert rep.phi == P(expected)
    assert rep.phi == coker_oracle(model)
    assert check_thm33(model, rep).ok


@pytest.mark.parametrize("l, i", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_cyclotomic_quotient_examples(l, i):
    model = model_example53(l, i)
    rep = compute_phi(model)
    assert rep.phi == P([i])
    assert rep.graded == (P(), P([i]), P(), P())
    assert rep.layer(0, 1) == P() and rep.layer(2, 4) == P()
    assert rep.phi == coker_oracle(model)
    assert check_thm33(model, rep).ok


def test_cyclotomic_quotient_at_two_warns():
    with pytest.warns(UserWarning):
        model = model_example53(2, 2)
    assert model.ranks is None
    assert compute_phi(model).phi == P([2])


@pytest.mark.parametrize("l, r, s", [(2, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1)])
def test_three_step_twisted_examples(l, r, s):
    reports = []
    for N in (2 * r + s + 2, 2 * r + s + 4):
        model = model_example54(l, r, s, N)
        assert model.rank <= 10
        rep = compute_phi(model)
        assert rep.phi == P([2 * r + s])
        assert rep.graded == (P([r]), P([s]), P([r]), P())
        assert rep.phi == coker_oracle(model)
        assert check_thm33(model, rep).ok
        reports.append(rep)
    assert reports[0] == reports[1]


@pytest.mark.parametrize("l, r", [(2, 1), (2, 2), (3, 1)])
def test_two_step_twisted_examples(l, r):
    reps = [compute_phi(model_example55(l, r, N)) for N in (2 * r + 2, 2 * r + 4)]
    assert reps[0] == reps[1]
    assert reps[0].phi == P([2 * r])
    assert reps[0].graded == (P([r]), P(), P([r]), P())


def test_insufficient_precision_is_reported():
    model = model_example54(2, 1, 1, 3)
    with pytest.raises(PrecisionError):
        compute_phi(model)


@pytest.mark.parametrize("ns, l", [([12, 2], 2), ([12, 2], 3), ([9], 3), ([5, 5, 7], 5), ([1], 2), ([], 2)])
def test_tate_products(ns, l):
    model = model_example51(ns, l)
    rep = compute_phi(model)
    expected = from_invariant_factors(ns).part(l) if ns else P()
    assert rep.phi == expected
    # everything sits in the last filtration step
    assert rep.layer(3, 4) == rep.phi
    assert check_thm33(model, rep).ok


@pytest.mark.parametrize(
    "model, expected",
    [
        (model_unipotent_elliptic("klein"), (1, 1)),
        (model_unipotent_elliptic("cyclic2"), (1,)),
        (abelian_pad_model(2, 2), ()),
        (unipotent_pad_model(3, 2), ()),
        (unipotent_pad_model(2, 3), ()),
        (trivial_model(3), ()),
    ],
)
def test_small_blocks(model, expected):
    rep = compute_phi(model)
    assert rep.phi == P(expected)
    assert check_thm33(model, rep).ok


def test_filtration_validation():
    good = model_example52(3, 1)
    with pytest.raises(ModelError):
        # V^1 not inside V^0
        replace(good, filtration=(good.filtration[1], good.filtration[0], good.filtration[2], good.filtration[3])).validate()
    with pytest.raises(ModelError):
        # not saturated
        replace(good, filtration=(good.filtration[0].scale(2),) + good.filtration[1:]).validate()
    with pytest.raises(ModelError):
        # the second block is not tau-stable
        n = good.rank
        last = IntMatrix.from_columns([[int(j == n - 1) for j in range(n)]])
        replace(good, filtration=(good.filtration[0], last, last, IntMatrix.zeros(n, 0))).validate()
    with pytest.raises(ModelError):
        replace(good, ranks=Ranks(0, 0, 2, 1, 1)).validate()
    with pytest.raises(ModelError):
        replace(good, mode="fuzzy").validate()
    with pytest.raises(ModelError):
        replace(good, N=3).validate()


def test_infinite_component_group_is_rejected():
    model = GaloisLatticeModel(
        l=2,
        tau=IntMatrix.identity(2),
        filtration=(IntMatrix.identity(2),) * 2 + (IntMatrix.zeros(2, 0),) * 2,
    ).validate()
    with pytest.raises(ModelError):
        compute_phi(model)


@pytest.mark.parametrize(
    "model",
    [
        model_example52(2, 2),
        model_example53(3, 2),
        model_example54(3, 1, 1, 6),
        model_example51([4, 6], 2),
        model_unipotent_elliptic("klein"),
    ],
)
def test_json_round_trip(model):
    data = model.to_json()
    back = GaloisLatticeModel.from_json(data)
    assert back == model
    assert compute_phi(back) == compute_phi(model)


def test_json_rejects_malformed_models():
    data = model_example52(3, 1).to_json()
    with pytest.raises(ValueError):
        GaloisLatticeModel.from_json({**data, "rank": 3})
    with pytest.raises(ValueError):
        GaloisLatticeModel.from_json({"l": 2})
    with pytest.raises(ValueError):
        GaloisLatticeModel.from_json({**data, "l": 4})


def test_phi_report_json():
    rep = compute_phi(model_example52(2, 3))
    data = rep.to_json()
    assert data["phi"] == [4, 2]
    assert data["order"] == "64"
    assert len(data["graded"]) == 4
    assert set(data["layers"]) == {f"{i}/{j}" for i in range(5) for j in range(i + 1, 5)}


def test_direct_sum_adds_phi_and_ranks():
    parts = [model_example52(3, 1), model_example53(3, 2), unipotent_pad_model(1, 3)]
    total = direct_sum(parts)
    rep = compute_phi(total)
    assert rep.phi == P([2, 1, 1])
    assert total.ranks == parts[0].ranks + parts[1].ranks + parts[2].ranks
    assert check_thm33(total, rep).ok


def test_direct_sum_mixes_exact_and_mod():
    total = direct_sum([model_example55(3, 1, 6), model_example52(3, 1)])
    assert total.mode == "mod" and total.N == 6
    assert compute_phi(total).phi == P([2, 1, 1])
    with pytest.raises(ModelError):
        direct_sum([model_example55(3, 1, 6), model_example55(3, 1, 7)])
    with pytest.raises(ModelError):
        direct_sum([model_example52(3, 1), model_example52(5, 1)])


def test_derived_multiplicities():
    assert derived_multiplicities(model_example52(2, 3)) == (CycloMultiplicities(2, (1, 1, 1)), CycloMultiplicities(2))
    assert derived_multiplicities(model_example53(5, 2)) == (CycloMultiplicities(5), CycloMultiplicities(5, (1, 1)))
    with pytest.raises(ModelError):
        derived_multiplicities(model_example55(2, 1, 4))


def test_wrong_multiplicities_break_the_bounds():
    model = model_example52(3, 2)
    lying = replace(model, m_t=CycloMultiplicities(3))
    verdict = check_thm33(lying, compute_phi(lying))
    assert not verdict.ok
    assert {line.part for line in verdict.lines if not line.ok} >= {2}
    assert "FAIL" in str(verdict)


def test_cor34_over_several_primes():
    model = model_example51([6, 10], 2)
    pairs = [(with_prime(model, l), compute_phi(with_prime(model, l))) for l in (2, 3, 5)]
    assert check_cor34(pairs).ok
    with pytest.raises(ModelError):
        check_cor34(pairs + pairs[:1])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["52-1", "52-2", "53-1", "53-2", "klein", "pad"]), min_size=1, max_size=4))
def test_direct_sums_satisfy_bounds_and_add_phi(names):
    l = 3

    def build(name):
        if name == "klein":
            return model_unipotent_elliptic("klein", l)
        if name == "pad":
            return unipotent_pad_model(1, l)
        kind, i = name.split("-")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return (model_example52 if kind == "52" else model_example53)(l, int(i))

    parts = [build(n) for n in names]
    total = direct_sum(parts)
    rep = compute_phi(total)
    merged = []
    for p in parts:
        merged += list(compute_phi(p).phi)
    assert rep.phi == P.from_unsorted(merged)
    assert rep.phi == coker_oracle(total)
    assert check_thm33(total, rep).ok
