"""External rays by Newton continuation, with landing refinement."""
from __future__ import annotations

import cmath
import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..angles import Angle, angle, format_angle, orbit
from ..combinatorics import RayPair
from . import kernels
from .config import DEFAULT, NumericsConfig
from .dynamics import (DegenerateRoot, SeedError, exact_center_period, find_center,
                       find_misiurewicz, find_periodic_point, internal_ray_point)


class Inconclusive(RuntimeError):
    """A numerical verdict could not be reached (trace did not land)."""


@dataclass
class RayTrace:
    angle: Angle
    kind: str  # "parameter" or "dynamic"
    c: complex | None
    points: list[complex]
    potentials: list[float]
    landing_estimate: complex
    converged: bool
    final_potential: float
    #: how the landing point was obtained: "refined", "stalled" or "none"
    landing: str = "none"
    center: complex | None = field(default=None, repr=False)

    @property
    def tip(self) -> complex:
        return self.points[-1]

    def polyline(self) -> list[complex]:
        """Points from the outer end to the landing estimate."""
        pts = list(self.points)
        if pts[-1] != self.landing_estimate:
            pts.append(self.landing_estimate)
        return pts

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["potential", "re", "im"])
        for g, p in zip(self.potentials, self.points):
            w.writerow([repr(g), repr(p.real), repr(p.imag)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "angle": format_angle(self.angle), "kind": self.kind,
            "c": None if self.c is None else [self.c.real, self.c.imag],
            "landing": [self.landing_estimate.real, self.landing_estimate.imag],
            "converged": self.converged, "method": self.landing,
            "final_potential": self.final_potential, "points": len(self.points),
        }


def _continue(theta: Fraction, parameter: bool, c: complex, depth: int,
              cfg: NumericsConfig):
    d, s, log_r = cfg.degree, cfg.substeps, math.log(cfg.escape_radius)
    w = cfg.escape_radius * cmath.exp(2j * math.pi * float(theta))
    points, potentials = [], []
    moves = []
    ok = True
    for j in range(depth * s + 1):
        g = log_r * d ** (-j / s)
        m = j // s
        phase = float((d ** m * theta) % 1)
        target = cmath.exp(d ** m * g) * cmath.exp(2j * math.pi * phase)
        w_new, _, good = kernels.newton_ray_point(
            w, target, 0j if parameter else c, m, parameter, d,
            cfg.newton_steps, cfg.newton_tol)
        if not good or not cmath.isfinite(w_new):
            ok = False
            break
        if points:
            moves.append(abs(w_new - points[-1]))
        w = w_new
        points.append(w)
        potentials.append(g)
    stalled = len(moves) >= 3 and max(moves[-3:]) < cfg.landing_tol
    return points, potentials, ok, stalled


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _refine_parameter(theta: Fraction, tip: complex, cfg: NumericsConfig):
    """Exact landing parameter near ``tip``: a root or a Misiurewicz point."""
    pre, per, _ = orbit(theta, cfg.degree)
    if pre == 0:
        if per == 1 and cfg.degree == 2:
            # the period-1 ray lands at the cusp of the main cardioid
            return complex(1 / 4), 0j
        center = find_center(per, tip, cfg)
        if exact_center_period(center, per, cfg.degree) != per:
            raise SeedError("center of a lower period")
        root, _ = internal_ray_point(center, per, 1.0, cfg)
        return root, center
    for k in _divisors(per):
        try:
            return find_misiurewicz(pre + 1, k, tip, cfg), None
        except (SeedError, DegenerateRoot):
            continue
    raise SeedError("no Misiurewicz root near the ray tip")


def _refine_dynamic(theta: Fraction, tip: complex, c: complex, cfg: NumericsConfig):
    pre, per, _ = orbit(theta, cfg.degree)
    return find_periodic_point(c, per, tip, pre, cfg)


def _approaches(points: list[complex], root: complex, window: int) -> bool:
    """The tail of the trace moves monotonically towards ``root``."""
    dist = [abs(p - root) for p in points[-window:]]
    return all(b <= a + 1e-12 for a, b in zip(dist, dist[1:]))


def _finish(theta, kind, c, points, potentials, ok, stalled, refine, cfg):
    if not points:
        return RayTrace(theta, kind, c, [complex("nan")], [math.nan],
                        complex("nan"), False, math.nan)
    tip = points[-1]
    landing, method, converged, center = tip, "none", False, None
    if ok or stalled or len(points) > cfg.substeps:
        try:
            root, center = refine(tip)
        except (SeedError, DegenerateRoot, ZeroDivisionError, OverflowError):
            root = None
        if (root is not None and abs(root - tip) < cfg.landing_radius
                and _approaches(points, root, 8 * cfg.substeps)):
            landing, method, converged = root, "refined", True
        elif stalled:
            method, converged = "stalled", True
    return RayTrace(theta, kind, c, points, potentials, landing, converged,
                    potentials[-1], method, center)


def trace_parameter_ray(theta: Angle, depth: int | None = None,
                        cfg: NumericsConfig = DEFAULT) -> RayTrace:
    theta = angle(theta)
    depth = cfg.depth if depth is None else depth
    if not 0 <= depth <= cfg.depth:
        raise ValueError(f"depth must lie in [0, {cfg.depth}]")
    pts, pots, ok, stalled = _continue(theta, True, 0j, depth, cfg)
    return _finish(theta, "parameter", None, pts, pots, ok, stalled,
                   lambda tip: _refine_parameter(theta, tip, cfg), cfg)


def trace_dynamic_ray(c: complex, theta: Angle, depth: int | None = None,
                      cfg: NumericsConfig = DEFAULT) -> RayTrace:
    theta = angle(theta)
    c = complex(c)
    depth = cfg.depth if depth is None else depth
    if not 0 <= depth <= cfg.depth:
        raise ValueError(f"depth must lie in [0, {cfg.depth}]")
    pts, pots, ok, stalled = _continue(theta, False, c, depth, cfg)
    return _finish(theta, "dynamic", c, pts, pots, ok, stalled,
                   lambda tip: (_refine_dynamic(theta, tip, c, cfg), None), cfg)


def trace_many(thetas, c: complex | None = None, depth: int | None = None,
               cfg: NumericsConfig = DEFAULT) -> list[RayTrace]:
    """Trace several rays concurrently; parameter rays when ``c`` is None."""
    def one(t):
        if c is None:
            return trace_parameter_ray(t, depth, cfg)
        return trace_dynamic_ray(c, t, depth, cfg)
    thetas = list(thetas)
    if len(thetas) <= 1:
        return [one(t) for t in thetas]
    with ThreadPoolExecutor(max_workers=min(8, len(thetas))) as pool:
        return list(pool.map(one, thetas))


def landed(traces: list[RayTrace]) -> list[RayTrace]:
    bad = [format_angle(t.angle) for t in traces if not t.converged]
    if bad:
        raise Inconclusive(f"rays did not land: {', '.join(bad)}")
    return traces


def verify_ray_pair(pair: RayPair, c: complex | None = None, tol: float = 1e-6,
                    depth: int | None = None, cfg: NumericsConfig = DEFAULT) -> bool:
    """Do the two rays of ``pair`` land at a common point?

    Parameter rays when ``c`` is None, dynamic rays of p_c otherwise.
    """
    a, b = landed(trace_many([pair.minus, pair.plus], c, depth, cfg))
    return abs(a.landing_estimate - b.landing_estimate) < tol
