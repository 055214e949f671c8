import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neroncomp.exactlinalg import IntMatrix, cokernel_l_part, companion, cyclo_product, lambda_mult_matrix
from neroncomp.exactlinalg.automorphisms import (
    CycloMultiplicities,
    LatticeAuto,
    check_coinvariant_bound,
    conjugate_counts,
    cyclotomic_multiplicities,
)
from neroncomp.exactlinalg.polys import poly_mul
from neroncomp.exactlinalg.unimodular import random_unimodular_pair
from neroncomp.partitions import Partition, delta_l

NEG = IntMatrix([[-1]])


@pytest.mark.parametrize(
    "sigma, l, expected",
    [
        (NEG, 2, (1,)),
        (IntMatrix.identity(2), 2, ()),
        (companion(poly_mul([1, 1], [1, 0, 1])), 2, (1, 1)),
        (lambda_mult_matrix(3, 1, 1), 3, (1,)),
        (lambda_mult_matrix(3, 1, 1), 2, ()),
    ],
)
def test_multiplicity_examples(sigma, l, expected):
    assert cyclotomic_multiplicities(sigma, l) == CycloMultiplicities(l, expected)


@pytest.mark.parametrize("m, expected", [((1, 1), (2,)), ((2,), (1, 1)), ((2, 0, 1), (2, 1)), ((), ())])
def test_conjugate_counts(m, expected):
    assert conjugate_counts(m) == Partition(expected)


def test_multiplicity_rank_and_sum():
    a = CycloMultiplicities(2, (1, 1, 0))
    assert a.m == (1, 1)
    assert a.rank() == 3
    assert (a + CycloMultiplicities(2, (0, 0, 1))).rank() == 7
    with pytest.raises(ValueError):
        a + CycloMultiplicities(3, (1,))
    with pytest.raises(ValueError):
        CycloMultiplicities(2, (-1,))


def test_coinvariant_bound_on_negation():
    rep = check_coinvariant_bound(NEG, 2)
    assert rep.coinv == Partition([1])
    assert rep.bound == 1 and rep.equality and rep.structure_ok


def test_coinvariant_bound_on_cyclic_ring():
    rep = check_coinvariant_bound(companion(poly_mul([1, 1], [1, 0, 1])), 2)
    assert rep.coinv == Partition([2])
    assert rep.bound == 3 == rep.rank
    assert rep.ok and rep.equality and rep.structure_ok


def test_coinvariant_bound_on_two_negations():
    rep = check_coinvariant_bound(IntMatrix.diag([-1, -1]), 2)
    assert rep.coinv == Partition([1, 1])
    assert rep.ok and rep.equality


def test_coinvariant_bound_at_three():
    # a 3-cycle on Z^3 restricted to its sum-zero sublattice is the order-3 rotation
    rep = check_coinvariant_bound(lambda_mult_matrix(3, 1, 1), 3)
    assert rep.coinv == Partition([1])
    assert delta_l(3, rep.coinv) == 2 == rep.rank
    other = check_coinvariant_bound(IntMatrix.diag([-1, -1, -1]), 3)
    assert other.coinv == Partition() and not other.equality


def test_coinvariants_reject_eigenvalue_one():
    with pytest.raises(ValueError):
        check_coinvariant_bound(IntMatrix.identity(1), 2)


def test_lattice_auto_validation():
    assert LatticeAuto(NEG, 2).dim == 1
    with pytest.raises(ValueError):
        LatticeAuto(IntMatrix([[2]]))
    with pytest.raises(ValueError):
        LatticeAuto(NEG, 3)
    with pytest.raises(ValueError):
        LatticeAuto(IntMatrix([[1, 0]]))


@pytest.mark.parametrize("l, lo, hi", [(2, 1, 1), (2, 1, 3), (3, 1, 2), (5, 1, 1), (2, 2, 3)])
def test_cyclic_ring_coinvariants_have_order_l_to_length(l, lo, hi):
    x = lambda_mult_matrix(l, lo, hi)
    typ, corank = cokernel_l_part(x - IntMatrix.identity(x.rows), l)
    assert corank == 0
    assert sum(typ) == hi - lo + 1


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from([2, 3]), st.integers(1, 2), st.integers(0, 1)), min_size=1, max_size=3),
    st.integers(0, 10**6),
)
def test_coinvariant_bound_holds_for_random_sums(specs, seed):
    l = specs[0][0]
    blocks = []
    for bl, lo, extra in specs:
        if bl != l:
            continue
        blocks.append(lambda_mult_matrix(l, lo, lo + extra))
    sigma = IntMatrix.block_diag(blocks)
    u, w = random_unimodular_pair(sigma.rows, random.Random(seed))
    rep = check_coinvariant_bound(u @ sigma @ w, l)
    assert rep.ok
    assert rep.multiplicities.rank() == sigma.rows
    assert sigma.charpoly() == (u @ sigma @ w).charpoly()
    assert rep.multiplicities == cyclotomic_multiplicities(sigma, l)


def test_cyclo_product_degree():
    assert len(cyclo_product(2, 1, 3)) - 1 == 1 + 2 + 4
