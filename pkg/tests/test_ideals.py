import itertools

import pytest

from semicomm.algebra import Partition
from semicomm.congruence import congruence_generated_by
from semicomm.errors import InternalError
from semicomm.fixtures import EVEN_MOD8_LABELS, even_mod8, semiring_B, trivial
from semicomm.ideals import (
    IdealSet,
    all_ideals,
    ideal_closure,
    ideal_commutator,
    ideal_product,
    is_ideal,
    power_of_S,
    powers_until_stable,
    raw_power_is_zero,
    rho_formula,
    rho_generated,
    rho_of_ideal,
    sum_closure,
    zero_class,
)

from conftest import census, small_census
from oracles import naive_ideals, naive_rho


def ev(*vals):
    return {EVEN_MOD8_LABELS.index(v) for v in vals}


def test_closure_examples():
    s = even_mod8()
    assert ideal_closure(s, [0]).elems == {0}
    assert ideal_closure(s, ev(4)).elems == ev(0, 4)
    assert ideal_closure(semiring_B(), [1]).elems == {0, 1}
    with pytest.raises(ValueError):
        ideal_closure(s, [])


def test_all_ideals_examples():
    assert [I.elems for I in all_ideals(semiring_B())] == [{0}, {0, 1}]
    assert [I.elems for I in all_ideals(even_mod8())] == [ev(0), ev(0, 4), ev(0, 2, 4, 6)]
    assert len(all_ideals(trivial())) == 1


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_all_ideals_brute_force(order):
    for s in census(order):
        got = {I.elems for I in all_ideals(s)}
        assert got == set(naive_ideals(s))
        assert all(s.zero in I for I in got)


def test_products_examples():
    s = even_mod8()
    S = power_of_S(s, 1)
    zero = IdealSet(s, [0])
    assert ideal_product([S, zero, S]).is_zero
    assert power_of_S(s, 2).elems == ev(0, 4)
    assert power_of_S(s, 3).elems == ev(0)
    assert power_of_S(semiring_B(), 2).elems == {0}
    assert [p.elems for p in powers_until_stable(s)] == [ev(0, 2, 4, 6), ev(0, 4), ev(0)]


def test_commutator_examples():
    s = even_mod8()
    S = power_of_S(s, 1)
    assert ideal_commutator([S, S]) == power_of_S(s, 2)
    assert ideal_commutator([IdealSet(s, [0]), S]).is_zero
    assert ideal_commutator([IdealSet(s, ev(0, 4)), S]).is_zero


def _brute_product(s, ideals):
    """All finite sums of products, grown one summand at a time."""
    prods = {s.product(c) for c in itertools.product(*(sorted(I.elems) for I in ideals))}
    sums = {s.zero}
    while True:
        nxt = sums | {s.plus[a][p] for a in sums for p in prods}
        if nxt == sums:
            return sums
        sums = nxt


@pytest.mark.parametrize("order", [2, 3])
def test_products_are_ideals_and_match_brute_force(order):
    for s in census(order):
        ideals = all_ideals(s)
        for I, J in itertools.product(ideals, repeat=2):
            got = ideal_product([I, J])
            assert got.elems == _brute_product(s, [I, J])
            assert is_ideal(s, got.elems)
            c = ideal_commutator([I, J])
            assert c.elems == sum_closure(s, _brute_product(s, [I, J]) | _brute_product(s, [J, I]))
            assert is_ideal(s, c.elems)


def test_ideal_sums_idempotent():
    for s in small_census():
        for I in all_ideals(s):
            assert sum_closure(s, I.elems) == I.elems


@pytest.mark.parametrize("order", [1, 2, 3])
def test_commutators_of_powers(order):
    for s in census(order):
        pw = {k: power_of_S(s, k) for k in range(1, 7)}
        for m, n in itertools.product(range(1, 4), repeat=2):
            assert ideal_commutator([pw[m], pw[n]]) == pw[m + n]
        for k in (2, 3):
            assert ideal_commutator([pw[1]] * k) == pw[k]


def test_rho_examples():
    s = even_mod8()
    assert rho_of_ideal(s, IdealSet(s, [0])) == Partition.identity(4)
    assert rho_of_ideal(s, power_of_S(s, 1)) == Partition.full(4)
    assert rho_of_ideal(s, IdealSet(s, ev(0, 4))) == Partition.from_classes(4, [sorted(ev(0, 4)), sorted(ev(2, 6))])


def test_rho_on_B():
    b = semiring_B()
    assert rho_of_ideal(b, power_of_S(b, 2)) == rho_of_ideal(b, IdealSet(b, [0])) == Partition.identity(2)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_rho_constructions_agree(order):
    for s in census(order):
        for I in all_ideals(s):
            f = rho_formula(s, I)
            assert f == rho_generated(s, I)
            if order <= 3:
                assert f == naive_rho(s, I)


def test_rho_cross_check_catches_non_ideals():
    from semicomm.algebra import FiniteSemiring

    # Z2 with an absorbing element 2 adjoined, zero multiplication; {0, 1} is an ideal
    s = FiniteSemiring.from_tables([[0, 1, 2], [1, 0, 2], [2, 2, 2]], [[0] * 3] * 3)
    assert rho_of_ideal(s, {0, 1}) == Partition.from_classes(3, [[0, 1]])
    with pytest.raises(InternalError):
        rho_of_ideal(s, {1})  # formula gives 0, generation collapses 0 and 1
    t = FiniteSemiring.from_tables([[0, 1, 2], [1, 1, 1], [2, 1, 1]], [[0] * 3] * 3)
    with pytest.raises(InternalError):
        rho_formula(t, {0, 2})  # 0 ~ 2 and 2 ~ 1 but not 0 ~ 1


def test_equal_rho_implies_containment():
    for s in small_census():
        ideals = all_ideals(s)
        rhos = {I: rho_of_ideal(s, I) for I in ideals}
        for I, J in itertools.product(ideals, repeat=2):
            if rhos[I] == rhos[J]:
                assert I.elems <= zero_class(s, rhos[J])


def test_raw_power_vs_ideal_power():
    for n in (1, 2, 3):
        for s in census(n):
            for k in range(1, 5):
                assert raw_power_is_zero(s, k) == power_of_S(s, k).is_zero
