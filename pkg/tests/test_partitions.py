from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import partition as npartitions

from neroncomp.partitions import (
    Order,
    Partition,
    balanced_split,
    componentwise_sum,
    conjugate,
    count_partitions,
    delta_l,
    delta_prime_l,
    dominates,
    f_l,
    lex_compare,
    majorizes,
    merge,
    min_split_delta_bruteforce,
    partitions_of,
    shift_d,
    shift_dprime,
)

partitions = st.lists(st.integers(0, 6), max_size=6).map(Partition.from_unsorted)
primes = st.sampled_from([2, 3, 5, 7])


def test_partition_normalizes_trailing_zeros():
    assert Partition([2, 1, 0, 0]) == Partition([2, 1])
    assert Partition([0]) == Partition()


@pytest.mark.parametrize("bad", [[1, 2], [2, -1]])
def test_partition_rejects_bad_input(bad):
    with pytest.raises(ValueError):
        Partition(bad)


def test_partition_json_round_trip():
    p = Partition([3, 1])
    assert p.to_json() == [3, 1]
    assert Partition.from_json([3, 1]) == p
    with pytest.raises(ValueError):
        Partition.from_json([1, 3])


@pytest.mark.parametrize(
    "p, expected",
    [((), ()), ((2, 2), (2, 2)), ((3, 1), (2, 1, 1))],
)
def test_conjugate_examples(p, expected):
    assert conjugate(p) == Partition(expected)


@pytest.mark.parametrize(
    "p, q, expected",
    [((2,), (1, 1), Order.GT), ((1, 1), (1, 1), Order.EQ), ((2, 1), (2, 2), Order.LT)],
)
def test_lex_compare_examples(p, q, expected):
    assert lex_compare(p, q) == expected


@pytest.mark.parametrize(
    "p, q, expected",
    [((1, 1), (2, 1), True), ((2,), (1, 1), False), ((), (5,), True)],
)
def test_dominates_examples(p, q, expected):
    assert dominates(p, q) is expected


@pytest.mark.parametrize(
    "l, p, expected",
    [(2, (), 0), (2, (3, 1), 8), (3, (2, 1), 10)],
)
def test_delta_examples(l, p, expected):
    assert delta_l(l, p) == expected


@pytest.mark.parametrize(
    "l, p, expected",
    [(2, (3, 1), 8), (2, (2, 2), 5), (5, (1,), 4)],
)
def test_delta_prime_examples(l, p, expected):
    assert delta_prime_l(l, p) == expected


def test_delta_rejects_composite():
    with pytest.raises(ValueError):
        delta_l(4, (1,))
    with pytest.raises(ValueError):
        f_l(6, (1,))


@pytest.mark.parametrize(
    "p, t, expected",
    [((3, 2, 1), 1, (2, 1)), ((3, 2, 1), 0, (3, 2, 1)), ((2, 1), 5, ())],
)
def test_shift_d_examples(p, t, expected):
    assert shift_d(p, t) == Partition(expected)


@pytest.mark.parametrize("p, expected", [((3, 1), (2,)), ((1, 1, 1), ()), ((), ())])
def test_shift_dprime_examples(p, expected):
    assert shift_dprime(p) == Partition(expected)


@pytest.mark.parametrize(
    "l, p, expected",
    [(3, (2,), Fraction(2)), (2, (3, 1), Fraction(5, 2)), (2, (), Fraction(0))],
)
def test_f_l_examples(l, p, expected):
    value = f_l(l, p)
    assert isinstance(value, Fraction)
    assert value == expected


@pytest.mark.parametrize(
    "p, expected",
    [((2,), ((1,), (1,))), ((3, 1), ((2, 1), (1,))), ((), ((), ()))],
)
def test_balanced_split_examples(p, expected):
    assert balanced_split(p) == tuple(Partition(x) for x in expected)


@pytest.mark.parametrize("l, e, expected", [(2, (2,), 2), (2, (), 0), (2, (3, 1), 5)])
def test_min_split_examples(l, e, expected):
    assert min_split_delta_bruteforce(l, e) == expected


def test_merge_and_sum():
    assert merge((2,), (3, 1)) == Partition([3, 2, 1])
    assert componentwise_sum((2,), (3, 1)) == Partition([5, 1])


def test_partition_counts_match_sympy():
    for n in range(15):
        assert count_partitions(n) == npartitions(n)
        assert len(list(partitions_of(n))) == npartitions(n)


def test_partitions_of_is_decreasing_lex():
    for n in range(1, 10):
        ps = list(partitions_of(n))
        assert ps == sorted(ps, reverse=True)
        assert all(p.size == n for p in ps)


def test_lex_order_counterexample_to_delta_monotonicity():
    # lexicographically larger, yet smaller delta_2
    big, small = Partition([4, 1, 1, 1, 1, 1]), Partition([3, 3, 3])
    assert lex_compare(big, small) == Order.GT
    assert (delta_l(2, big), delta_l(2, small)) == (20, 21)
    assert not majorizes(big, small)


@given(partitions)
def test_conjugate_is_involution(p):
    assert conjugate(conjugate(p)) == p
    assert conjugate(p).size == p.size


@given(partitions)
def test_dprime_is_conjugate_of_d(p):
    assert shift_dprime(p) == conjugate(shift_d(conjugate(p), 1))


@given(partitions, st.integers(0, 4))
def test_d_and_dprime_commute(p, t):
    assert shift_d(shift_dprime(p), t) == shift_dprime(shift_d(p, t))


@given(primes, partitions)
def test_delta_dominates_delta_prime(l, p):
    assert delta_l(l, p) >= delta_prime_l(l, p)
    assert (delta_l(l, p) == delta_prime_l(l, p)) == all(x <= 1 for x in p[1:])


@given(primes, partitions)
def test_delta_zero_only_for_trivial(l, p):
    assert (delta_l(l, p) == 0) == (p == Partition())


@given(primes, partitions)
def test_balanced_split_value(l, p):
    r, s = balanced_split(p)
    assert componentwise_sum(r, s) == p
    assert delta_l(l, r) + delta_l(l, s) == 2 * f_l(l, p)


@given(st.integers(1, 8), st.data())
def test_delta_strictly_increases_along_dominance(n, data):
    ps = list(partitions_of(n))
    p = data.draw(st.sampled_from(ps))
    q = data.draw(st.sampled_from(ps))
    l = data.draw(primes)
    if p != q and majorizes(p, q):
        assert delta_l(l, p) > delta_l(l, q)


@given(partitions, partitions)
def test_componentwise_order_implies_majorization(p, q):
    if p.size == q.size and dominates(q, p):
        assert p == q
    if dominates(p, q):
        assert majorizes(q, p)


@settings(max_examples=40)
@given(st.sampled_from([2, 3]), st.integers(0, 6), st.data())
def test_bruteforce_minimum_is_twice_f(l, n, data):
    e = data.draw(st.sampled_from(list(partitions_of(n))))
    m = min_split_delta_bruteforce(l, e)
    assert m == 2 * f_l(l, e)
    assert m >= f_l(l, e)
