import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from multibrot.angles import is_d_adic, orbit
from multibrot.combinatorics import RayPair, conjugate_angle, period_pairs
from multibrot.tuning import (ComponentSignature, NotInCopy, basilica, decoration_angles,
                              locate, tune, untune)
from oracles import period_angles, tune_oracle


def components(max_period):
    comps = [ComponentSignature.identity()]
    for n in range(2, max_period + 1):
        comps += [ComponentSignature.from_angle(p.minus) for p in period_pairs(n)]
    return comps


COMPS3 = components(3)
TUNED = [c for c in COMPS3 if c.period > 1]


def test_signature():
    b = basilica()
    assert b.period == 2 and b.words == ("01", "10")
    assert b.root_pair == RayPair(F(1, 3), F(2, 3), 2)
    assert str(b) == "2:1/3"
    assert ComponentSignature.parse("3:2/7").words == ("001", "010")
    with pytest.raises(ValueError):
        ComponentSignature.parse("2:1/7")


def test_tune_examples():
    b = basilica()
    assert tune(b, F(0)) == (F(1, 3),)
    assert tune(b, F(1, 2)) == (F(5, 12), F(7, 12))
    assert tune(b, F(1, 3)) == (F(2, 5),)
    assert tune(ComponentSignature.identity(), F(3, 7)) == (F(3, 7),)


def test_untune_examples():
    b = basilica()
    assert untune(b, F(2, 5)) == F(1, 3)
    assert untune(b, F(5, 12)) == F(1, 2)
    with pytest.raises(NotInCopy):
        untune(b, F(1, 7))


def test_decoration_examples():
    b = basilica()
    assert decoration_angles(b, 1) == [RayPair(F(5, 12), F(7, 12))]
    two = decoration_angles(b, 2)
    extra = {(p.minus, p.plus) for p in two} - {(F(5, 12), F(7, 12))}
    want = {tuple(sorted(tune_oracle("01", "10", F(a, 4)))) for a in (1, 3)}
    assert extra == want
    assert decoration_angles(b, 0) == []
    with pytest.raises(ValueError):
        decoration_angles(ComponentSignature.identity(), 1)


def test_locate_examples():
    b = basilica()
    assert locate(b, F(1, 7), 4).kind == "outside_wake"
    assert locate(b, F(2, 5), 4).kind == "inside_copy"
    # oracle: is 9/20 inside a tuned image pair of some a/2^k, k <= 4?
    hits = [(lo, hi) for k in range(1, 5) for a in range(1, 2**k, 2)
            for lo, hi in [sorted(tune_oracle("01", "10", F(a, 2**k)))]
            if lo < F(9, 20) < hi]
    loc = locate(b, F(9, 20), 4)
    if hits:
        assert loc.kind == "in_decoration"
        assert (loc.pair.minus, loc.pair.plus) in hits
    else:
        assert loc.kind == "undecided"


def test_tune_matches_substitution_oracle():
    for comp in TUNED:
        for q in range(2, 50):
            for p in range(1, q):
                assert set(tune(comp, F(p, q))) == tune_oracle(*comp.words, F(p, q))


def test_injective_below_2_to_10():
    b = basilica()
    seen = {}
    for q in range(1, 2**10):
        for p in range(q):
            theta = F(p, q)
            if theta.denominator != q:
                continue
            for img in tune(b, theta):
                assert seen.setdefault(img, theta) == theta


def test_order_preserving():
    thetas = sorted({F(p, q) for q in range(3, 120) for p in range(q)
                     if not is_d_adic(F(p, q))})
    for comp in TUNED:
        images = [tune(comp, t)[0] for t in thetas]
        assert images == sorted(images) and len(set(images)) == len(images)


def test_commutes_with_pairing():
    for comp in COMPS3:
        for n in range(2, 7):
            for theta in period_angles(n):
                (img,) = tune(comp, theta)
                assert conjugate_angle(img) == tune(comp, conjugate_angle(theta))[0]


def test_period_multiplies_and_wakes_nest():
    for comp in TUNED:
        root = comp.root_pair
        for n in range(1, 7):
            for theta in ([F(0)] if n == 1 else period_angles(n)):
                (img,) = tune(comp, theta)
                assert orbit(img)[0] == 0 and orbit(img)[1] == comp.period * n
                assert root.minus <= img < root.plus
                if theta:
                    assert root.contains(img)
        for pair in decoration_angles(comp, 4):
            assert root.minus < pair.minus < pair.plus < root.plus


@given(st.integers(0, 10**6), st.integers(1, 10**4), st.sampled_from(TUNED))
def test_untune_inverts_tune(p, q, comp):
    theta = F(p % q, q)
    for img in tune(comp, theta):
        assert untune(comp, img) == theta


def test_untune_random_corpus():
    rng = random.Random(7)
    for _ in range(100):
        q = rng.randrange(2, 5000)
        theta = F(rng.randrange(q), q)
        for comp in TUNED:
            assert all(untune(comp, img) == theta for img in tune(comp, theta))
