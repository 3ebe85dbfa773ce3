from fractions import Fraction as F
from itertools import combinations

import pytest

from multibrot.angles import orbit
from multibrot.combinatorics import (DegeneratePartition, LandsAlone, Lamination, RayPair,
                                     ResourceBound, _conjugate_local, build_lamination,
                                     conjugate_angle, internal_address, kneading, links,
                                     period_pairs, ray_pair, wake_contains)
from oracles import address_from_word, itinerary, lavaurs_matching, period_angles


@pytest.fixture(scope="module")
def lam8():
    return build_lamination(8)


@pytest.fixture(scope="module")
def oracle8():
    return lavaurs_matching(8)


def test_kneading_examples():
    assert str(kneading(F(1, 3))) == "(1*)"
    assert str(kneading(F(1, 2))) == "1(0)"
    assert str(kneading(F(1, 7))) == "(11*)"


def test_kneading_matches_itinerary_oracle():
    for q in range(3, 40):
        for p in range(1, q):
            k = kneading(F(p, q))
            assert "".join(k.symbol(j) for j in range(1, 31)) == itinerary(F(p, q), 30)


def test_kneading_of_zero_is_degenerate():
    with pytest.raises(DegeneratePartition):
        kneading(F(0))


def test_internal_address_examples():
    a = internal_address(F(1, 3), 10)
    assert a.entries == (1, 2) and not a.truncated
    a = internal_address(F(1, 2), 5)
    assert a.entries == (1, 2, 3, 4, 5) and a.truncated
    # the first-difference recursion gives 1-3 here (the rabbit)
    assert internal_address(F(1, 7), 10).entries == (1, 3)
    assert str(internal_address(F(2, 5), 10)) == "1-2-4"


def test_internal_address_matches_recursion_oracle():
    for n in range(2, 9):
        for theta in period_angles(n):
            word = itinerary(theta, n)
            assert list(internal_address(theta).entries) == address_from_word(word * 3, 64)


def test_lamination_examples():
    pairs = lambda n: {(p.minus, p.plus) for p in build_lamination(n).pairs}
    assert pairs(2) == {(F(1, 3), F(2, 3))}
    assert pairs(3) - pairs(2) == {(F(1, 7), F(2, 7)), (F(3, 7), F(4, 7)), (F(5, 7), F(6, 7))}


def test_lamination_matches_brute_force_oracle(lam8, oracle8):
    got = sorted((p.minus, p.plus, p.period) for p in lam8.pairs)
    assert got == sorted(oracle8)


def test_lamination_non_crossing(lam8):
    assert not any(links(p, q) for p, q in combinations(lam8.pairs, 2))


def test_lamination_complete_and_equal_periods(lam8):
    for n in range(2, 9):
        ends = [a for p in lam8.pairs_of_period(n) for a in (p.minus, p.plus)]
        assert sorted(ends) == period_angles(n)
    assert lam8.pair_of(F(0)) is None
    for p in lam8.pairs:
        assert orbit(p.minus)[1] == orbit(p.plus)[1] == p.period
        assert orbit(p.minus)[0] == orbit(p.plus)[0] == 0


def test_conjugate_involution_and_address_tail():
    for n in range(2, 9):
        for theta in period_angles(n):
            other = conjugate_angle(theta)
            assert conjugate_angle(other) == theta
            assert internal_address(theta).entries[-1] == n


def test_conjugate_examples():
    assert conjugate_angle(F(1, 3)) == F(2, 3)
    assert conjugate_angle(F(1, 7)) == F(2, 7)
    with pytest.raises(LandsAlone):
        conjugate_angle(F(0))


def test_local_conjugate_matches_lamination():
    for n in range(2, 11):
        for p in period_pairs(n):
            assert _conjugate_local(p.minus, n) == p.plus
            assert _conjugate_local(p.plus, n) == p.minus


def test_conjugate_beyond_table_bound():
    # period 20 goes through the local search; check pairing laws
    theta = F(1, 2**20 - 1)
    other = conjugate_angle(theta)
    assert orbit(other)[1] == 20
    assert conjugate_angle(other) == theta
    assert kneading(theta).period == kneading(other).period


def test_wake_contains_examples():
    basilica = RayPair(F(1, 3), F(2, 3))
    assert wake_contains(basilica, F(5, 12))
    assert not wake_contains(basilica, F(1, 3))
    assert not wake_contains(RayPair(F(1, 7), F(2, 7)), F(9, 14))


def test_resource_bound():
    with pytest.raises(ResourceBound):
        build_lamination(1)
    with pytest.raises(ResourceBound):
        build_lamination(40)


def test_ray_pair_validation():
    with pytest.raises(ValueError):
        RayPair(F(2, 3), F(1, 3))
    assert ray_pair(F(2, 7)) == RayPair(F(1, 7), F(2, 7), 3)


def test_text_round_trip(lam8):
    text = lam8.to_text()
    assert text.splitlines()[0] == "1/3 2/3 2"
    assert Lamination.from_text(text) == lam8
