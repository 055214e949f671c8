from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neroncomp.abgroups import AbGroup, from_invariant_factors
from neroncomp.classify import (
    BlockSpec,
    ConstructionPlan,
    RealizabilityQuery,
    block_models,
    end_to_end_check,
    is_realizable,
    plan,
    plan_problems,
    rhs_bound,
    verify_plan,
)
from neroncomp.models import compute_phi
from neroncomp.partitions import Partition

Q = RealizabilityQuery.make


@pytest.mark.parametrize(
    "G, t, expected",
    [
        ({3: (2,)}, 0, 2),
        ({2: (1, 1)}, 0, 1),
        ({2: (3, 1), 5: (2,)}, 2, 0),
        ({2: (3,)}, 0, 2),
        ({2: (1,)}, 0, Fraction(1, 2)),
    ],
)
def test_rhs_bound_examples(G, t, expected):
    value = rhs_bound(AbGroup(G), t)
    assert isinstance(value, Fraction)
    assert value == expected


def test_rhs_bound_rejects_p_part():
    with pytest.raises(ValueError):
        rhs_bound(AbGroup({5: (1,)}), 0, 5)
    with pytest.raises(ValueError):
        rhs_bound(AbGroup({5: (1,)}), 0, 4)


@pytest.mark.parametrize(
    "G, t, a, u, expected",
    [
        ({2: (2,)}, 0, 0, 1, True),
        ({3: (2,)}, 0, 0, 1, False),
        ({3: (2,)}, 0, 0, 2, True),
        ({2: (1,)}, 1, 0, 0, True),
        ({2: (1,)}, 0, 1, 0, False),
        ({}, 0, 3, 0, True),
    ],
)
def test_is_realizable_examples(G, t, a, u, expected):
    assert is_realizable(Q(AbGroup(G), t, a, u)) is expected


def test_query_validation():
    with pytest.raises(ValueError):
        RealizabilityQuery(AbGroup.trivial(), 2, 1, 0, 0)
    with pytest.raises(ValueError):
        Q(AbGroup({5: (1,)}), 0, 0, 2, p=5)
    with pytest.raises(ValueError):
        Q(AbGroup.trivial(), -1, 0, 0)
    q = Q(AbGroup({2: (2, 1)}), 1, 0, 2, p=3)
    assert RealizabilityQuery.from_json(q.to_json()) == q


def kinds(p):
    return [(b.kind, b.dim) for b in p.blocks]


def test_plan_with_tate_block_and_cyclic_pair():
    q = Q(from_invariant_factors([12, 2]), 1, 0, 2)
    p = plan(q)
    assert kinds(p) == [("tate_product", 1), ("cyclic2_single", 1), ("unipotent_pad", 1)]
    assert p.blocks[0].params == {"ns": [12]}
    assert verify_plan(p, q)
    assert end_to_end_check(p)


def test_plan_for_cyclic_nine():
    q = Q(AbGroup({3: (2,)}), 0, 0, 2)
    p = plan(q)
    assert kinds(p) == [("ex55", 2)]
    assert p.blocks[0].params == {"l": 3, "r": 1}
    assert verify_plan(p, q) and end_to_end_check(p)


def test_plan_for_trivial_group():
    q = Q(AbGroup.trivial(), 0, 1, 1)
    assert kinds(plan(q)) == [("abelian_pad", 1), ("unipotent_pad", 1)]


def test_plan_uses_every_block_kind():
    q = Q(AbGroup({2: (3, 2, 1, 1, 1), 3: (1,), 5: (3,)}), 0, 1, 60)
    p = plan(q)
    names = {b.kind for b in p.blocks}
    assert names == {"ex54", "ex55", "klein_pair", "cyclic2_single", "ex53", "abelian_pad", "unipotent_pad"}
    assert verify_plan(p, q)
    assert p.predicted_phi == q.G


def test_plan_refuses_unrealizable():
    with pytest.raises(ValueError):
        plan(Q(AbGroup({3: (2,)}), 0, 0, 1))


def test_verify_plan_catches_tampering():
    q = Q(from_invariant_factors([12, 2]), 1, 1, 3)
    p = plan(q)
    assert verify_plan(p, q)
    dropped = ConstructionPlan(p.blocks[1:], q)
    assert not verify_plan(dropped, q)
    pad = p.blocks[-1]
    inflated = replace(pad, dim=pad.dim + 1, u=pad.u + 1, params={"dim": pad.dim + 1})
    assert not verify_plan(ConstructionPlan(p.blocks[:-1] + (inflated,), q), q)
    lying = replace(p.blocks[1], predicted_phi=AbGroup({2: (2,)}))
    problems = plan_problems(ConstructionPlan((p.blocks[0], lying) + p.blocks[2:], q), q)
    assert any("predicted group" in s for s in problems)


def test_plan_json_round_trip():
    q = Q(AbGroup({2: (3, 1, 1), 3: (1,)}), 1, 0, 8)
    p = plan(q)
    back = ConstructionPlan.from_json(p.to_json())
    assert back == p
    assert verify_plan(back, q)


def test_block_spec_rejects_unknown_kind():
    with pytest.raises(ValueError):
        BlockSpec.from_json(
            {"kind": "mystery", "params": {}, "dim": 0, "ranks": {"t": 0, "a": 0, "u": 0}, "predicted_phi": {}}
        )


@pytest.mark.parametrize(
    "G",
    [{2: (1,)}, {2: (2,)}, {2: (3,)}, {3: (1,)}, {3: (3,)}, {2: (1, 1)}, {5: (1,)}, {2: (4,)}],
)
def test_block_dimensions_match_model_ranks(G):
    q = Q(AbGroup(G), 0, 0, 40)
    for b in plan(q).blocks:
        for l, model in block_models(b).items():
            assert model.rank == 2 * b.dim
            assert compute_phi(model).phi == b.predicted_phi.part(l)


groups = st.dictionaries(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(1, 3), min_size=1, max_size=3).map(Partition.from_unsorted),
    max_size=2,
).map(AbGroup)


@settings(max_examples=60, deadline=None)
@given(groups, st.integers(0, 3), st.integers(0, 2), st.integers(0, 12))
def test_plan_exists_exactly_when_realizable(G, t, a, u):
    q = Q(G, t, a, u)
    if is_realizable(q):
        p = plan(q)
        assert verify_plan(p, q)
    else:
        with pytest.raises(ValueError):
            plan(q)


@settings(max_examples=60, deadline=None)
@given(groups, st.integers(0, 3), st.integers(0, 12))
def test_realizability_is_monotone(G, t, u):
    if is_realizable(Q(G, t, 0, u)):
        assert is_realizable(Q(G, t, 0, u + 1))
        assert is_realizable(Q(G, t + 1, 0, u))
        assert is_realizable(Q(G, t, 1, u))
