"""Fibers on the circle of external angles.

A parameter ray pair separates two angles when exactly one of them lies
strictly inside its wake.  Every periodic angle of period >= 2 belongs to a
pair, so the part of the circle not separated from a target by pairs of
period <= n is the arc between the nearest periodic angles of those periods
on either side of the target.
"""
from __future__ import annotations

import csv
import io
import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle, angle, format_angle
from .combinatorics import (LAMINATION_BOUND, RayPair, ResourceBound,
                            conjugate_angle, internal_address, period_pairs,
                            ray_pair)
from .tuning import ComponentSignature, tune

#: periods beyond this are refused by fiber_interval
FIBER_BOUND = 60


class AmbiguousSkeleton(ValueError):
    pass


def separated(a: Angle, b: Angle, pair: RayPair) -> bool:
    a, b = Fraction(a), Fraction(b)
    ends = (pair.minus, pair.plus)
    if a in ends or b in ends:
        return False
    return pair.contains(a) != pair.contains(b)


@dataclass(frozen=True)
class FiberRecord:
    max_period: int
    left: Angle
    right: Angle
    length: Fraction


@dataclass(frozen=True)
class FiberReport:
    target: Angle
    records: tuple[FiberRecord, ...]

    @property
    def final(self) -> FiberRecord:
        return self.records[-1]

    def to_json(self) -> str:
        return json.dumps({
            "target": format_angle(self.target),
            "records": [{"max_period": r.max_period,
                         "interval": [format_angle(r.left), format_angle(r.right)],
                         "length": str(r.length)} for r in self.records],
        })

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["depth", "left", "right", "length"])
        for r in self.records:
            w.writerow([r.max_period, f"{float(r.left):.12f}", f"{float(r.right):.12f}",
                        f"{float(r.length):.12f}"])
        return buf.getvalue()


def _exact_period(j: int, steps: list[int]) -> bool:
    return all(j % s for s in steps)


def _neighbours(t: Fraction, m: int) -> tuple[Fraction, Fraction]:
    """Nearest period-m angles strictly below and above t, unwrapped around t."""
    q = (1 << m) - 1
    steps = [q // ((1 << k) - 1) for k in range(1, m) if m % k == 0]
    j = math.ceil(t * q) - 1
    while j > 0 and not _exact_period(j, steps):
        j -= 1
    if j > 0:
        below = Fraction(j, q)
    else:
        j = q - 1
        while not _exact_period(j, steps):
            j -= 1
        below = Fraction(j, q) - 1
    j = math.floor(t * q) + 1
    while j < q and not _exact_period(j, steps):
        j += 1
    if j < q:
        above = Fraction(j, q)
    else:
        j = 1
        while not _exact_period(j, steps):
            j += 1
        above = Fraction(j, q) + 1
    return below, above


def fiber_interval(target: Angle, max_period: int, bound: int = FIBER_BOUND) -> FiberReport:
    """Nested arcs around ``target`` left unseparated by pairs of period <= n.

    Pair angles themselves are never excluded: when the target is a pair
    angle the neighbouring angles are taken strictly on either side.
    """
    if not 2 <= max_period <= bound:
        raise ResourceBound(f"max_period must lie in [2, {bound}], got {max_period}")
    t = angle(target)
    left, right = Fraction(-2), Fraction(3)
    records = []
    for m in range(2, max_period + 1):
        below, above = _neighbours(t, m)
        left, right = max(left, below), min(right, above)
        records.append(FiberRecord(m, left % 1, right % 1, min(right - left, Fraction(1))))
    return FiberReport(t, tuple(records))


def fiber_transfer_check(comp: ComponentSignature, target: Angle, max_period: int) -> bool:
    """Check that tuning carries the separating pairs of ``target`` to
    separating pairs of its tuned image with the same nesting.

    A dyadic target has two images (a decoration pair); both are checked.
    """
    t = angle(target)
    if comp.period == 1:
        return True
    report = fiber_interval(t, max_period)
    images = tune(comp, t)
    ends = {a for r in report.records for a in (r.left, r.right)}
    for a in ends:
        pair = ray_pair(a)
        (lo,) = tune(comp, pair.minus)
        (hi,) = tune(comp, pair.plus)
        if conjugate_angle(lo) != hi:
            return False
        tuned = RayPair(lo, hi, comp.period * pair.period)
        for image in images:
            if tuned.contains(image) != pair.contains(t):
                return False
            if (image in (lo, hi)) != (t in (pair.minus, pair.plus)):
                return False
    final = report.final
    (tl,) = tune(comp, final.left)
    (tr,) = tune(comp, final.right)
    for image in images:
        if final.left < final.right:
            inside = tl <= image <= tr
        else:
            inside = image >= tl if t >= final.left else image <= tr
        if not inside:
            return False
    return True


@dataclass(frozen=True)
class ArcSkeleton:
    target: Angle
    components: tuple[tuple[int, RayPair | None], ...]
    truncated: bool = False

    @property
    def periods(self) -> list[int]:
        return [n for n, _ in self.components]

    def to_json(self) -> str:
        return json.dumps({
            "target": format_angle(self.target),
            "components": [{"period": n, "root": p.to_json() if p else None}
                           for n, p in self.components],
            "truncated": self.truncated,
        })


def _pairs_around(t: Fraction, n: int) -> list[RayPair]:
    pairs = period_pairs(n)
    minus = [p.minus for p in pairs]
    hi = bisect_right(minus, t)
    return [p for p in pairs[:hi] if p.plus >= t]


def arc_skeleton(target: Angle, max_len: int = 16,
                 bound: int = LAMINATION_BOUND) -> ArcSkeleton:
    """Chain of hyperbolic components from the main cardioid towards ``target``,
    one per entry of its internal address."""
    t = angle(target)
    address = internal_address(t, max_len)
    comps: list[tuple[int, RayPair | None]] = [(1, None)]
    prev: RayPair | None = None
    truncated = address.truncated
    for n in address.entries[1:]:
        if n > bound:
            truncated = True
            break
        found = [p for p in _pairs_around(t, n)
                 if prev is None or (prev.minus < p.minus and p.plus < prev.plus)]
        if len(found) != 1:
            raise AmbiguousSkeleton(
                f"{len(found)} period-{n} pairs qualify for {format_angle(t)}")
        prev = found[0]
        comps.append((n, prev))
    return ArcSkeleton(t, tuple(comps), truncated)
