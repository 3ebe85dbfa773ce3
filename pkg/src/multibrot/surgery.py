"""Piece dynamics in the 1/3-limb and confinement to little Julia sets."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import shapely

from .angles import Angle, angle, format_angle, orbit
from .combinatorics import RayPair, period_pairs
from .numerics.config import DEFAULT, NumericsConfig
from .numerics.dynamics import iterate
from .numerics.kernels import green
from .numerics.rays import Inconclusive, landed, trace_many, trace_parameter_ray
from .numerics.regions import (PiecePartition, build_partition, pair_partition,
                               sector_polygon)

#: the 1/3-limb wake and the dynamic rays landing at alpha and -alpha
LIMB = RayPair(Fraction(1, 7), Fraction(2, 7), 3)
ALPHA_RAYS = (Fraction(1, 7), Fraction(2, 7), Fraction(4, 7))
MINUS_ALPHA_RAYS = (Fraction(9, 14), Fraction(11, 14), Fraction(1, 14))
Z1_ARC = (Fraction(9, 14), Fraction(11, 14))

BD_SECTORS = [
    ("Y1", Fraction(1, 7), Fraction(2, 7)),
    ("Y2", Fraction(2, 7), Fraction(4, 7)),
    ("Z1", Fraction(9, 14), Fraction(11, 14)),
    ("Z2", Fraction(11, 14), Fraction(15, 14)),
]

MEMBER, NON_MEMBER, INCONCLUSIVE = "member", "non_member", "inconclusive"


class OutsideWake(ValueError):
    """The parameter or angle is not in the 1/3-limb."""


@dataclass(frozen=True)
class CompositeMapSpec:
    """Iterate exponent applied on each named piece."""
    pieces: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if any(n < 1 for _, n in self.pieces):
            raise ValueError("exponents must be positive")

    def exponent(self, name: str) -> int | None:
        return dict(self.pieces).get(name)


BD_MAP = CompositeMapSpec((("Y1", 2), ("Y0", 1), ("Z2", 1)))


# -- symbolic ----------------------------------------------------------------

def in_limb(theta: Angle) -> bool:
    """Angles of the 1/3-limb wake, its lower root angle 1/7 included."""
    return LIMB.minus <= angle(theta) < LIMB.plus


def bd_membership_symbolic(theta: Angle) -> bool:
    """True iff the doubling orbit of ``theta`` avoids the open arc (9/14, 11/14)."""
    theta = angle(theta)
    if not in_limb(theta):
        raise OutsideWake(f"{format_angle(theta)} is not in [1/7, 2/7)")
    lo, hi = Z1_ARC
    return not any(lo < x < hi for x in orbit(theta, 2)[2])


# -- parameter-plane precondition -------------------------------------------

@lru_cache(maxsize=8)
def _limb_wake(cfg: NumericsConfig):
    a, b = landed(trace_many([LIMB.minus, LIMB.plus], None, cfg=cfg))
    poly = sector_polygon(a, b, cfg.escape_radius)
    lines = shapely.MultiLineString([[(p.real, p.imag) for p in r.polyline()]
                                     for r in (a, b)])
    shapely.prepare(poly)
    return poly, lines


def require_limb(c: complex, cfg: NumericsConfig = DEFAULT) -> None:
    """Raise unless ``c`` lies in the 1/3-limb wake with a bounded critical orbit."""
    poly, lines = _limb_wake(cfg)
    pt = shapely.Point(c.real, c.imag)
    if shapely.dwithin(lines, pt, cfg.boundary_tol):
        raise Inconclusive(f"{c} is within tolerance of the wake boundary")
    if not shapely.contains(poly, pt):
        raise OutsideWake(f"{c} is not in the 1/3-limb wake")
    if green(c, np.array([c]), cfg.green_iter, cfg.degree, cfg.bailout)[0] > 0:
        raise Inconclusive(f"critical orbit of {c} escapes; Julia set is disconnected")


def limb_centers(max_period: int, cfg: NumericsConfig = DEFAULT):
    """(angle, center) for each hyperbolic component of period <= max_period in
    the 1/3-limb, named by its lower root angle."""
    out = []
    for n in range(3, max_period + 1):
        for pair in period_pairs(n):
            if in_limb(pair.minus) and pair.plus <= LIMB.plus:
                tr = trace_parameter_ray(pair.minus, cfg=cfg)
                if tr.converged and tr.center is not None:
                    out.append((pair.minus, tr.center))
    return out


# -- alpha rays ---------------------------------------------------------------

@dataclass(frozen=True)
class AlphaCheck:
    alpha: complex
    max_gap: float
    residual: float
    landings: tuple[complex, ...]

    def to_json(self) -> dict:
        return {"alpha": [self.alpha.real, self.alpha.imag], "max_gap": self.max_gap,
                "residual": self.residual}


def alpha_rays_check(c: complex, cfg: NumericsConfig = DEFAULT) -> AlphaCheck:
    """Trace the dynamic rays 1/7, 2/7, 4/7 and measure how well they land together."""
    c = complex(c)
    require_limb(c, cfg)
    traces = landed(trace_many(ALPHA_RAYS, c, cfg=cfg))
    pts = [t.landing_estimate for t in traces]
    gap = max(abs(a - b) for a in pts for b in pts)
    alpha = sum(pts) / len(pts)
    return AlphaCheck(alpha, gap, abs(alpha * alpha + c - alpha), tuple(pts))


# -- Branner-Douady composite map ---------------------------------------------

def bd_partition(c: complex, cfg: NumericsConfig = DEFAULT) -> PiecePartition:
    """Pieces Y0, Y1, Y2, Z1, Z2 cut by the rays landing at alpha and -alpha."""
    return build_partition(complex(c), BD_SECTORS, "Y0", cfg)


def boundary_compatibility(part: PiecePartition, spec: CompositeMapSpec = BD_MAP) -> float:
    """Largest disagreement of the exponents' iterates at the shared landing points."""
    degree = part.cfg.degree
    exps = [n for _, n in spec.pieces]
    worst = 0.0
    for tr in part.rays.values():
        z = tr.landing_estimate
        vals = [iterate(part.c, z, n, degree) for n in exps]
        worst = max(worst, max(abs(a - b) for a in vals for b in vals))
    return worst


@dataclass(frozen=True)
class OrbitRecord:
    step: int
    point: complex
    label: str


@dataclass(frozen=True)
class BDReport:
    verdict: str
    records: tuple[OrbitRecord, ...]

    def to_csv(self) -> str:
        return orbit_csv(self.records)


def orbit_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im", "piece", "step"])
    for r in records:
        w.writerow([repr(r.point.real), repr(r.point.imag), r.label, r.step])
    return buf.getvalue()


def bd_orbit(c: complex, max_iter: int, cfg: NumericsConfig = DEFAULT,
             spec: CompositeMapSpec = BD_MAP,
             partition: PiecePartition | None = None) -> BDReport:
    """Follow the critical point under the composite map, piece by piece."""
    c = complex(c)
    try:
        require_limb(c, cfg)
        part = partition or bd_partition(c, cfg)
    except Inconclusive:
        return BDReport(INCONCLUSIVE, ())
    z = 0j
    records = []
    for step in range(max_iter + 1):
        label = part.label(z)
        records.append(OrbitRecord(step, z, label))
        if label == "Z1":
            return BDReport(NON_MEMBER, tuple(records))
        n = spec.exponent(label)
        if n is None:  # Y2, or no usable label
            return BDReport(INCONCLUSIVE, tuple(records))
        if step < max_iter:
            z = iterate(c, z, n, cfg.degree)
    return BDReport(MEMBER, tuple(records))


def bd_membership_numeric(c: complex, max_iter: int = 200,
                          cfg: NumericsConfig = DEFAULT) -> str:
    return bd_orbit(c, max_iter, cfg).verdict


# -- little Julia sets ---------------------------------------------------------

@dataclass(frozen=True)
class Confinement:
    kind: str  # stays | escapes | inconclusive
    step: int | None = None

    def __str__(self) -> str:
        return f"escapes({self.step})" if self.kind == "escapes" else self.kind


def little_julia_escape(c: complex, bounding_pairs, n: int, z: complex, max_iter: int,
                        cfg: NumericsConfig = DEFAULT, base: complex = 0j,
                        cap_potential: float | None = None,
                        partition: PiecePartition | None = None) -> Confinement:
    """Iterate p_c^n from ``z`` while it stays in the region U cut out by the
    bounding pairs around ``base`` (the critical point by default)."""
    try:
        part = partition or pair_partition(complex(c), bounding_pairs, cfg, cap_potential)
    except Inconclusive:
        return Confinement("inconclusive")
    home = part.signature([base])[0]
    z = complex(z)
    for step in range(max_iter + 1):
        if part.near_boundary([z])[0]:
            return Confinement("inconclusive", step)
        if part.signature([z])[0] != home:
            return Confinement("escapes", step)
        if step < max_iter:
            z = iterate(part.c, z, n, cfg.degree)
    return Confinement("stays")


def forward_union_sample(c: complex, sample, n: int, degree: int = 2) -> list[complex]:
    """p_c^k(sample) for k = 0..n-1, in order of k."""
    pts = [complex(z) for z in sample]
    out = []
    for _ in range(n):
        out.extend(pts)
        pts = [z ** degree + c for z in pts]
    return out


def airplane_pairs() -> list[RayPair]:
    """The period-3 pair and its negative bounding the little Julia set of 0
    for parameters in the real period-3 component."""
    return [RayPair(Fraction(2, 7), Fraction(5, 7), 3),
            RayPair(Fraction(3, 14), Fraction(11, 14))]
