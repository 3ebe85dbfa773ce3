"""Plane regions cut out by landed dynamic ray pairs and an equipotential cap."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

import numpy as np
import shapely
from shapely.geometry import Polygon

from ..angles import Angle, format_angle
from . import kernels
from .config import DEFAULT, NumericsConfig
from .rays import Inconclusive, RayTrace, landed, trace_many

BOUNDARY = "boundary"
OUTSIDE = "outside"


def sector_polygon(ray_a: RayTrace, ray_b: RayTrace, radius: float,
                   arc_points: int = 256) -> Polygon:
    """Region swept by the angles strictly between the two rays (counterclockwise
    from ``ray_a`` to ``ray_b``), closed at the outer radius."""
    a, b = float(ray_a.angle), float(ray_b.angle)
    if b <= a:
        b += 1.0
    arc = [radius * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))
           for t in np.linspace(b, a, arc_points)[1:-1]]
    ring = ray_a.polyline() + ray_b.polyline()[::-1] + arc
    poly = Polygon([(p.real, p.imag) for p in ring])
    if not poly.is_valid:
        poly = shapely.make_valid(poly)
    shapely.prepare(poly)
    return poly


@dataclass(frozen=True)
class Sector:
    name: str
    minus: Angle
    plus: Angle  # may exceed 1 for sectors straddling angle 0
    polygon: object


@dataclass(frozen=True)
class PiecePartition:
    """Named sectors at parameter ``c``; points in none of them get ``default``.

    Labels are a sector name, ``default``, OUTSIDE (at or above the cap) or
    BOUNDARY (within the tolerance band of a ray).
    """
    c: complex
    rays: dict
    sectors: tuple[Sector, ...]
    default: str
    cap_potential: float
    boundary_tol: float
    cfg: NumericsConfig

    @cached_property
    def boundary(self):
        lines = shapely.MultiLineString(
            [[(p.real, p.imag) for p in r.polyline()] for r in self.rays.values()])
        shapely.prepare(lines)
        return lines

    def potential(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        return kernels.green(complex(self.c), z, self.cfg.green_iter,
                             self.cfg.degree, self.cfg.bailout)

    def inside(self, z, sector: Sector) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        return shapely.contains_xy(sector.polygon, z.real, z.imag)

    def near_boundary(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        pts = shapely.points(z.real, z.imag)
        return shapely.dwithin(self.boundary, pts, self.boundary_tol)

    def signature(self, z) -> np.ndarray:
        """Bit i set when the point lies in sector i; bit n marks the cap."""
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        sig = np.zeros(z.shape, dtype=np.int64)
        for i, s in enumerate(self.sectors):
            sig |= self.inside(z, s).astype(np.int64) << i
        above = self.potential(z) >= self.cap_potential
        sig |= above.astype(np.int64) << len(self.sectors)
        return sig

    def classify(self, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        labels = np.full(z.shape, self.default, dtype=object)
        for s in reversed(self.sectors):
            labels[self.inside(z, s)] = s.name
        labels[self.potential(z) >= self.cap_potential] = OUTSIDE
        labels[self.near_boundary(z)] = BOUNDARY
        return labels

    def label(self, z: complex) -> str:
        return str(self.classify([z])[0])

    def to_json(self) -> dict:
        return {
            "c": [self.c.real, self.c.imag],
            "cap_potential": self.cap_potential,
            "default": self.default,
            "sectors": [{"name": s.name, "minus": format_angle(s.minus % 1),
                         "plus": format_angle(s.plus % 1)} for s in self.sectors],
            "rays": [r.to_json() for r in self.rays.values()],
        }


def build_partition(c: complex, sectors: list[tuple[str, Angle, Angle]],
                    default: str = "rest", cfg: NumericsConfig = DEFAULT,
                    cap_potential: float | None = None,
                    pair_tol: float | None = None) -> PiecePartition:
    """Trace every boundary ray at ``c`` concurrently and assemble the sectors.

    Each sector is (name, a, b): the angles strictly between a and b
    counterclockwise.  Both rays of a sector must land at a common point.
    """
    c = complex(c)
    angles = sorted({Fraction(t) % 1 for _, a, b in sectors for t in (a, b)})
    traces = dict(zip(angles, landed(trace_many(angles, c, cfg=cfg))))
    tol = cfg.boundary_tol if pair_tol is None else pair_tol
    built = []
    for name, a, b in sectors:
        ra, rb = traces[Fraction(a) % 1], traces[Fraction(b) % 1]
        gap = abs(ra.landing_estimate - rb.landing_estimate)
        if gap > tol:
            raise Inconclusive(f"rays {format_angle(ra.angle)} and "
                               f"{format_angle(rb.angle)} land {gap:.3g} apart")
        built.append(Sector(name, Fraction(a), Fraction(b),
                            sector_polygon(ra, rb, cfg.escape_radius)))
    cap = cfg.cap_potential if cap_potential is None else cap_potential
    return PiecePartition(c, traces, tuple(built), default, cap, cfg.boundary_tol, cfg)


def pair_partition(c: complex, pairs, cfg: NumericsConfig = DEFAULT,
                   cap_potential: float | None = None) -> PiecePartition:
    """Partition by a list of dynamic ray pairs, one sector per pair."""
    specs = [(f"{format_angle(p.minus)}-{format_angle(p.plus)}", p.minus, p.plus)
             for p in pairs]
    return build_partition(c, specs, "rest", cfg, cap_potential)
