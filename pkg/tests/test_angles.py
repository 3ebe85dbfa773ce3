from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from multibrot.angles import (Expansion, InvalidDegree, InvalidDigit, dual_expansions,
                              format_angle, from_expansion, is_d_adic, multiply_map,
                              orbit, parse_angle, to_expansion)
from oracles import binary_digits


def exp(text):
    return Expansion.parse(text)


@pytest.mark.parametrize("theta,d,out", [(F(1, 3), 2, F(2, 3)), (F(0), 2, F(0)),
                                         (F(4, 7), 2, F(1, 7)), (F(1, 5), 3, F(3, 5))])
def test_multiply_map(theta, d, out):
    assert multiply_map(theta, d) == out


def test_multiply_map_rejects_degree_one():
    with pytest.raises(InvalidDegree):
        multiply_map(F(1, 3), 1)


@pytest.mark.parametrize("theta,out", [
    (F(1, 7), (0, 3, [F(1, 7), F(2, 7), F(4, 7)])),
    (F(1, 6), (1, 2, [F(1, 6), F(1, 3), F(2, 3)])),
    (F(0), (0, 1, [F(0)])),
])
def test_orbit_examples(theta, out):
    assert orbit(theta, 2) == out


@pytest.mark.parametrize("theta,pre,per", [(F(1, 7), "", "001"), (F(5, 12), "01", "10"),
                                           (F(2, 3), "", "10")])
def test_to_expansion_examples(theta, pre, per):
    e = to_expansion(theta, 2)
    assert "".join(map(str, e.preperiod)) == pre
    assert "".join(map(str, e.period)) == per


def test_dual_expansions_examples():
    assert {str(e) for e in dual_expansions(F(1, 2), 2)} == {"2:1|0", "2:0|1"}
    assert {str(e) for e in dual_expansions(F(1, 3), 2)} == {"2:|01"}
    assert {str(e) for e in dual_expansions(F(1, 4), 2)} == {"2:01|0", "2:00|1"}
    assert {str(e) for e in dual_expansions(F(0), 2)} == {"2:|0", "2:|1"}


@pytest.mark.parametrize("text,value", [("2:|10", F(2, 3)), ("2:01|10", F(5, 12)),
                                        ("2:|0", F(0)), ("3:|2", F(0)), ("10:|3", F(1, 3))])
def test_from_expansion_examples(text, value):
    assert from_expansion(exp(text)) == value


def test_invalid_digit():
    with pytest.raises(InvalidDigit):
        from_expansion(Expansion(2, (), (2,)))


def test_serialization():
    assert format_angle(F(6, 4)) == "1/2"
    assert format_angle(F(0)) == "0/1"
    assert parse_angle("3/9") == F(1, 3)
    assert str(to_expansion(F(5, 12))) == "2:01|10"
    assert exp("2:01|10") == to_expansion(F(5, 12))


def test_binary_digits_match_oracle():
    for q in range(3, 60):
        for p in range(q):
            e = to_expansion(F(p, q), 2)
            assert "".join(map(str, e.digits(24))) == binary_digits(F(p, q), 24)


rationals = st.builds(lambda p, q: F(p % q, q), st.integers(0, 10**6), st.integers(1, 10**6 - 1))
small = st.builds(lambda p, q: F(p % q, q), st.integers(0, 10**4), st.integers(1, 10**4))
degrees = st.sampled_from([2, 3, 4])


@settings(max_examples=1000)
@given(rationals, degrees)
def test_round_trip(theta, d):
    assert from_expansion(to_expansion(theta, d)) == theta


@given(rationals, degrees)
def test_shift_law(theta, d):
    if is_d_adic(theta, d):
        return
    assert to_expansion(multiply_map(theta, d), d) == to_expansion(theta, d).shift().canonical()


@given(small, degrees)
def test_orbit_matches_period_word(theta, d):
    pre, per, points = orbit(theta, d)
    e = to_expansion(theta, d)
    assert len(points) == pre + per
    assert (pre == 0) == (len(e.preperiod) == 0) or is_d_adic(theta, d)
    if pre == 0:
        assert len(e.period) == per


@given(small, degrees)
def test_duals_evaluate_to_theta(theta, d):
    duals = dual_expansions(theta, d)
    assert len(duals) == (2 if is_d_adic(theta, d) else 1)
    assert all(from_expansion(e) == theta for e in duals)


@given(rationals)
def test_canonical_is_primitive_and_minimal(theta):
    e = to_expansion(theta, 2)
    per = e.period
    assert all(per != per[:k] * (len(per) // k) for k in range(1, len(per)) if len(per) % k == 0)
    if e.preperiod:
        assert e.preperiod[-1] != per[-1]
