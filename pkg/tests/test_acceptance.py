"""One test per acceptance criterion; each prints a PASS/FAIL line and the
terminal summary repeats them all."""
import random
import time
from fractions import Fraction as F

import numpy as np

from conftest import ACCEPTANCE
from multibrot.angles import is_d_adic
from multibrot.combinatorics import (build_lamination, conjugate_angle, period_pairs)
from multibrot.fibers import arc_skeleton, fiber_interval, fiber_transfer_check
from multibrot.numerics.config import DEFAULT
from multibrot.numerics.dynamics import alpha_fixed_point, center_residual, find_center
from multibrot.numerics.puzzle import puzzle_diameters
from multibrot.numerics.rays import trace_dynamic_ray, trace_many, verify_ray_pair
from multibrot.numerics.regions import pair_partition
from multibrot.surgery import (INCONCLUSIVE, MEMBER, NON_MEMBER, airplane_pairs,
                               alpha_rays_check, bd_membership_numeric, bd_membership_symbolic,
                               limb_centers, little_julia_escape)
from multibrot.tuning import ComponentSignature, basilica, decoration_angles, tune, untune
from oracles import lavaurs_matching, period_angles
from test_fibers import CORPUS30, CORPUS50
from test_numerics import AIRPLANE_PAIRS, misiurewicz_fit


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def components(max_period):
    comps = [ComponentSignature.identity()]
    for n in range(2, max_period + 1):
        comps += [ComponentSignature.from_angle(p.minus) for p in period_pairs(n)]
    return comps


def test_criterion_1_lamination():
    t0 = time.perf_counter()
    got = sorted((p.minus, p.plus, p.period) for p in build_lamination(8).pairs)
    matches = got == sorted(lavaurs_matching(8))
    pairs = [p for n in range(2, 7) for p in period_pairs(n)]
    failed = [str(p) for p in pairs if not verify_ray_pair(p, tol=1e-6)]
    dt = time.perf_counter() - t0
    record(1, matches and not failed and dt < 120,
           f"lamination(8) {'matches' if matches else 'differs from'} brute force "
           f"({len(got)} pairs); {len(pairs) - len(failed)}/{len(pairs)} pairs of period <= 6 "
           f"land within 1e-6; {dt:.1f}s")


def test_criterion_2_alpha_rays():
    t0 = time.perf_counter()
    centers = limb_centers(8)
    chosen = centers[::max(1, len(centers) // 10)][:10]
    gaps, residuals = [], []
    for _, c in chosen:
        chk = alpha_rays_check(c)
        gaps.append(chk.max_gap)
        residuals.append(chk.residual)
    dt = time.perf_counter() - t0
    record(2, len(chosen) == 10 and max(gaps) < 1e-6 and max(residuals) < 1e-8 and dt < 60,
           f"{len(chosen)} limb centers: max gap {max(gaps):.2e}, max residual "
           f"{max(residuals):.2e}; {dt:.1f}s")


def test_criterion_3_decorations():
    pairs = decoration_angles(basilica(), 3)
    worst_gap = worst_tip = worst_res = 0.0
    for pair in pairs:
        a, b = trace_many([pair.minus, pair.plus])
        gap = abs(a.landing_estimate - b.landing_estimate) if a.converged and b.converged else np.inf
        worst_gap = max(worst_gap, gap)
        # the unrefined ray ends must already agree
        worst_tip = max(worst_tip, abs(a.tip - b.tip))
        worst_res = max(worst_res, misiurewicz_fit(pair.minus, a.landing_estimate))
    record(3, len(pairs) == 7 and max(worst_gap, worst_tip) < 1e-4 and worst_res < 1e-9,
           f"{len(pairs)} decoration pairs: max landing gap {worst_gap:.2e} "
           f"(raw ray ends {worst_tip:.2e}), "
           f"max Misiurewicz residual {worst_res:.2e}")


def test_criterion_4_commutation():
    comps = components(3)
    checked = bad = 0
    for comp in comps:
        for n in range(2, 7):
            for theta in period_angles(n):
                (img,) = tune(comp, theta)
                checked += 1
                bad += conjugate_angle(img) != tune(comp, conjugate_angle(theta))[0]
    rng = random.Random(2024)
    trips = 0
    for _ in range(100):
        q = rng.randrange(2, 10**4)
        theta = F(rng.randrange(q), q)
        comp = rng.choice(comps[1:])
        trips += all(untune(comp, img) == theta for img in tune(comp, theta))
    record(4, bad == 0 and trips == 100,
           f"commutation exact on {checked - bad}/{checked} cases; "
           f"untune(tune) exact on {trips}/100 random angles")


def test_criterion_5_fibers():
    t0 = time.perf_counter()
    monotone = sum(all(b.length <= a.length for a, b in zip(r.records, r.records[1:]))
                   for r in (fiber_interval(t, 20) for t in CORPUS50))
    quarter = fiber_interval(F(1, 4), 20)
    first_small = next((r.max_period for r in quarter.records if r.length < F(1, 1000)), None)
    targets = sorted({F(p, q) for q in range(2, 100) for p in range(1, q)
                      if not is_d_adic(F(p, q))})
    comps = components(3)
    cases = [(c, t) for c in comps for t in targets]
    failed = [(str(c), t) for c, t in cases if not fiber_transfer_check(c, t, 8)]
    dt = time.perf_counter() - t0
    record(5, monotone == 50 and first_small is not None and not failed,
           f"monotone on {monotone}/50; 1/4 below 1e-3 at period {first_small} "
           f"(length {float(quarter.final.length):.2e} at 20); transfer holds on "
           f"{len(cases) - len(failed)}/{len(cases)}; {dt:.1f}s")


def test_criterion_6_period_three_center():
    t0 = time.perf_counter()
    c = find_center(3, -1.7)
    dt = time.perf_counter() - t0
    res = center_residual(c, 3)
    record(6, round(abs(c), 5) == 1.75488 and res < 1e-12 and dt < 1,
           f"find_center(3, -1.7) = {c.real:.12f}{c.imag:+.1e}i, |c| = {abs(c):.5f}, "
           f"residual {res:.1e}, {dt * 1000:.1f} ms")


def test_criterion_7_branner_douady():
    centers = limb_centers(8)
    verdicts = [(theta, bd_membership_numeric(c)) for theta, c in centers]
    conclusive = [(t, v) for t, v in verdicts if v != INCONCLUSIVE]
    disagree = [t for t, v in conclusive if (v == MEMBER) != bd_membership_symbolic(t)]
    rabbit = find_center(3, -0.12 + 0.75j)
    c531 = dict(centers)[F(5, 31)]
    exact = (bd_membership_symbolic(F(1, 7)) and bd_membership_numeric(rabbit) == MEMBER
             and not bd_membership_symbolic(F(5, 31))
             and bd_membership_numeric(c531) == NON_MEMBER)
    record(7, len(centers) >= 25 and not disagree and exact,
           f"{len(centers)} centers, {len(conclusive)} conclusive, {len(disagree)} disagreements; "
           f"1/7 member and 5/31 non_member {'as required' if exact else 'NOT reproduced'}")


def test_criterion_8_little_julia():
    c = find_center(3, -1.7)
    part = pair_partition(c, airplane_pairs())
    stays = little_julia_escape(c, None, 3, 0, 10**4, partition=part)
    cap = DEFAULT.cap_potential
    steps = []
    for theta in (F(0), F(1, 5), F(2, 5), F(3, 5), F(1, 10), F(9, 10)):
        ray = trace_dynamic_ray(c, theta)
        z = next(p for p, g in zip(ray.points[::-1], ray.potentials[::-1]) if g >= cap)
        res = little_julia_escape(c, None, 3, z, 100, partition=part)
        steps.append(res.step if res.kind == "escapes" else None)
    cap_ok = all(s is not None and s <= 2 for s in steps)
    rep = puzzle_diameters(c, AIRPLANE_PAIRS, alpha_fixed_point(c), 8)
    d = rep.diameters
    mono = not rep.truncated and len(d) == 9 and all(b <= a for a, b in zip(d, d[1:]))
    ratio = d[-1] / d[0] if d else np.inf
    record(8, stays.kind == "stays" and cap_ok and mono and ratio < 0.5,
           f"z=0 {stays} for 1e4 iterations of p^3; cap points escape at steps {steps}; "
           f"puzzle diameters {'non-increasing' if mono else 'NOT monotone'}, "
           f"depth 8/0 ratio {ratio:.3g}")


def test_criterion_9_skeletons():
    sk = arc_skeleton(F(2, 5), 10)
    roots = [p for _, p in sk.components[1:]]
    first = sk.periods == [1, 2, 4] and all(
        o.minus < i.minus < i.plus < o.plus for o, i in zip(roots, roots[1:]))
    nested = 0
    for t in CORPUS30:
        rs = [p for _, p in arc_skeleton(t, 10).components[1:]]
        nested += all(o.minus < i.minus < i.plus < o.plus for o, i in zip(rs, rs[1:]))
    record(9, first and nested == 30,
           f"arc_skeleton(2/5) periods {sk.periods}; nesting holds on {nested}/30 angles")
