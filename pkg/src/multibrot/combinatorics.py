"""Kneading data and the Lavaurs lamination of periodic angles (degree 2)."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .angles import Angle, angle, format_angle, orbit, parse_angle

STAR = "*"

#: default bound for materialising the full lamination; angles of higher
#: period are paired by the local characteristic-arc search instead
LAMINATION_BOUND = 16
#: hard limit of the integer sort keys used by the Lavaurs builder
_KEY_BITS = 64
_HARD_LIMIT = _KEY_BITS // 2


class DegeneratePartition(ValueError):
    """Angle 0 has no kneading partition."""


class LandsAlone(ValueError):
    """The period-1 ray lands alone at the cusp."""


class ResourceBound(ValueError):
    pass


@dataclass(frozen=True)
class KneadingSequence:
    base: int
    preperiod: str
    period: str

    def symbol(self, j: int) -> str:
        """1-based symbol access into the infinite sequence."""
        if j < 1:
            raise IndexError("kneading symbols are numbered from 1")
        i = j - 1
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def __str__(self) -> str:
        return f"{self.preperiod}({self.period})"


@dataclass(frozen=True)
class InternalAddress:
    entries: tuple[int, ...]
    truncated: bool = False

    def __str__(self) -> str:
        s = "-".join(str(e) for e in self.entries)
        return s + "-..." if self.truncated else s


@dataclass(frozen=True)
class RayPair:
    minus: Angle
    plus: Angle
    period: int | None = None

    def __post_init__(self):
        if not self.minus < self.plus:
            raise ValueError(f"ray pair needs minus < plus: {self.minus}, {self.plus}")

    def contains(self, theta: Angle) -> bool:
        return self.minus < theta < self.plus

    @property
    def width(self) -> Fraction:
        return self.plus - self.minus

    def to_json(self) -> dict:
        return {"minus": format_angle(self.minus), "plus": format_angle(self.plus),
                "period": self.period}

    def __str__(self) -> str:
        return f"({format_angle(self.minus)}, {format_angle(self.plus)})"


def links(p: RayPair, q: RayPair) -> bool:
    """True iff the chords of ``p`` and ``q`` cross."""
    return p.contains(q.minus) != p.contains(q.plus) and not (
        q.minus in (p.minus, p.plus) or q.plus in (p.minus, p.plus))


def wake_contains(pair: RayPair, theta: Angle) -> bool:
    return pair.contains(Fraction(theta))


def _itinerary_symbol(x: Angle, lo: Angle, hi: Angle) -> str:
    if x == lo or x == hi:
        return STAR
    return "1" if lo < x < hi else "0"


def kneading(theta: Angle) -> KneadingSequence:
    theta = angle(theta)
    if theta == 0:
        raise DegeneratePartition("angle 0 has a degenerate kneading partition")
    lo, hi = theta / 2, (theta + 1) / 2
    pre, per, points = orbit(theta, 2)
    symbols = "".join(_itinerary_symbol(x, lo, hi) for x in points)
    word_pre, word_per = symbols[:pre], symbols[pre:]
    # primitive period word and minimal preperiod, as for digit expansions
    n = len(word_per)
    for k in range(1, n + 1):
        if n % k == 0 and word_per[:k] * (n // k) == word_per:
            word_per = word_per[:k]
            break
    while word_pre and word_pre[-1] == word_per[-1]:
        word_pre = word_pre[:-1]
        word_per = word_per[-1] + word_per[:-1]
    return KneadingSequence(2, word_pre, word_per)


def _first_difference(nu: KneadingSequence, n: int) -> int | None:
    """First position m > n where nu differs from its n-periodic continuation."""
    limit = len(nu.preperiod) + lcm(len(nu.period), n) + n + 1
    for m in range(n + 1, limit + 1):
        a = nu.symbol(m)
        b = nu.symbol((m - 1) % n + 1)
        # a star only matches a star
        if a != b:
            return m
    return None


def internal_address(theta: Angle, max_len: int = 64) -> InternalAddress:
    nu = kneading(theta)
    entries = [1]
    while True:
        nxt = _first_difference(nu, entries[-1])
        if nxt is None:
            return InternalAddress(tuple(entries), False)
        if len(entries) >= max_len:
            return InternalAddress(tuple(entries), True)
        entries.append(nxt)


# -- Lavaurs lamination -------------------------------------------------------

def _exact_period_numerators(n: int) -> list[int]:
    """Numerators k of k/(2^n - 1) whose exact period under doubling is n."""
    q = (1 << n) - 1
    steps = [q // ((1 << m) - 1) for m in range(1, n) if n % m == 0]
    return [k for k in range(1, q) if all(k % s for s in steps)]


def _sort_key(k: int, n: int) -> int:
    return (k << _KEY_BITS) // ((1 << n) - 1)


class _LavaursTable:
    """Incrementally built Lavaurs pairing, stored as integer numerators."""

    def __init__(self):
        self.max_period = 1
        self.partners: dict[int, dict[int, int]] = {}
        # sorted chord endpoints: (key, chord index, is_open)
        self._endpoints: list[tuple[int, int, bool]] = []
        self._chords = 0

    def extend(self, n_max: int) -> None:
        for n in range(self.max_period + 1, n_max + 1):
            self._add_period(n)
            self.max_period = n

    def _add_period(self, n: int) -> None:
        ks = _exact_period_numerators(n)
        fresh = [(_sort_key(k, n), k) for k in ks]
        merged = sorted(self._endpoints + [(key, -1 - k, False) for key, k in fresh])
        stack: list[int] = []
        groups: dict[int, list[tuple[int, int]]] = {}
        for key, idx, is_open in merged:
            if idx < 0:
                region = stack[-1] if stack else -1
                groups.setdefault(region, []).append((key, -1 - idx))
            elif is_open:
                stack.append(idx)
            else:
                stack.pop()
        partner: dict[int, int] = {}
        new_endpoints = []
        for members in groups.values():
            if len(members) % 2:
                raise RuntimeError(f"odd gap while pairing period {n}")
            for (ka, a), (kb, b) in zip(members[0::2], members[1::2]):
                partner[a] = b
                partner[b] = a
                new_endpoints.append((ka, self._chords, True))
                new_endpoints.append((kb, self._chords, False))
                self._chords += 1
        self.partners[n] = partner
        self._endpoints = sorted(self._endpoints + new_endpoints)


_TABLE = _LavaursTable()


def _table(n: int) -> _LavaursTable:
    if n > _HARD_LIMIT:
        raise ResourceBound(f"lamination period {n} exceeds hard limit {_HARD_LIMIT}")
    if _TABLE.max_period < n:
        _TABLE.extend(n)
    return _TABLE


@dataclass(frozen=True)
class Lamination:
    max_period: int
    pairs: tuple[RayPair, ...]
    degree: int = 2
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self._index:
            for p in self.pairs:
                self._index[p.minus] = p
                self._index[p.plus] = p

    def pair_of(self, theta: Angle) -> RayPair | None:
        return self._index.get(Fraction(theta))

    def pairs_of_period(self, n: int) -> list[RayPair]:
        return [p for p in self.pairs if p.period == n]

    def to_text(self) -> str:
        return "".join(f"{format_angle(p.minus)} {format_angle(p.plus)} {p.period}\n"
                       for p in self.pairs)

    @classmethod
    def from_text(cls, text: str) -> "Lamination":
        pairs = []
        for line in text.splitlines():
            if line.strip():
                a, b, n = line.split()
                pairs.append(RayPair(parse_angle(a), parse_angle(b), int(n)))
        max_period = max((p.period for p in pairs), default=1)
        return cls(max_period, tuple(sorted(pairs, key=lambda p: (p.period, p.minus))))

    def to_json(self) -> str:
        return json.dumps([p.to_json() for p in self.pairs])


def build_lamination(max_period: int, bound: int = LAMINATION_BOUND) -> Lamination:
    """Lavaurs' construction: period by period, each gap of the lamination built
    so far has its new angles joined consecutively in circular order from 0."""
    if not 2 <= max_period <= min(bound, _HARD_LIMIT):
        raise ResourceBound(f"max_period must lie in [2, {bound}], got {max_period}")
    _table(max_period)
    pairs = [p for n in range(2, max_period + 1) for p in period_pairs(n)]
    return Lamination(max_period, tuple(pairs))


# -- conjugate angles ---------------------------------------------------------

def _itinerary(x: Angle, theta: Angle, n: int) -> str:
    lo, hi = theta / 2, (theta + 1) / 2
    out = []
    for _ in range(n):
        out.append(_itinerary_symbol(x, lo, hi))
        x = (2 * x) % 1
    return "".join(out)


def _wild_equal(a: str, b: str) -> bool:
    return all(x == y or STAR in (x, y) for x, y in zip(a, b))


def _cylinder(word: str, theta: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Arcs (start, length) of angles whose itinerary begins with ``word``.

    Built by pulling the circle back along the word; an arc is split at
    ``theta`` first so each preimage half lies in one partition arc.
    """
    lo = theta / 2
    half = Fraction(1, 2)
    pieces = [(theta, Fraction(1))]
    for sym in reversed(word):
        split = []
        for a, length in pieces:
            cut = (theta - a) % 1
            if 0 < cut < length:
                split += [(a, cut), (theta, length - cut)]
            else:
                split.append((a, length))
        pieces = []
        for a, length in split:
            start = a / 2
            mid = (start + length / 4 - lo) % 1
            if (mid < half) != (sym == "1"):
                start += half
            pieces.append((start % 1, length / 2))
    return pieces


def _conjugate_local(theta: Fraction, n: int) -> Fraction:
    """Partner of a period-n angle from dynamics alone.

    Rays landing together share the itinerary of ``theta`` with respect to the
    partition at theta/2, (theta+1)/2, so the partner is a period-n point of the
    cylinder of that itinerary, with the star read as 0 or 1.  Satellite
    partners lie in the orbit of ``theta`` and hit the partition, so orbit
    neighbours are candidates too.  The characteristic arc contains no point of
    either orbit and is the shortest such arc.
    """
    q = (1 << n) - 1
    nu = _itinerary(theta, theta, n)
    candidates: set[Fraction] = set()
    for s in "01":
        for a, length in _cylinder(nu[:-1] + s, theta):
            j0 = math.ceil(a * q)
            j1 = math.floor((a + length) * q)
            candidates.update(Fraction(j % q, q) for j in range(j0, j1 + 1))
    pts = sorted(orbit(theta, 2)[2])
    i = pts.index(theta)
    candidates.add(pts[i - 1])
    candidates.add(pts[(i + 1) % len(pts)])

    own = set(pts)
    found = []
    for x in candidates:
        if x == theta or x == 0 or orbit(x, 2)[:2] != (0, n):
            continue
        if not _wild_equal(_itinerary(x, theta, n), nu):
            continue
        lo, hi = min(x, theta), max(x, theta)
        if any(lo < y < hi for y in own.union(orbit(x, 2)[2])):
            continue
        found.append(x)
    if not found:
        raise RuntimeError(f"no partner found for {format_angle(theta)}")
    # the characteristic arc is the shortest arc of the orbit portrait
    return min(found, key=lambda x: abs(x - theta))


def conjugate_angle(theta: Angle, bound: int = LAMINATION_BOUND) -> Angle:
    """The other angle of the periodic ray pair containing ``theta``."""
    return _conjugate(angle(theta), bound)


@lru_cache(maxsize=1 << 16)
def _conjugate(theta: Fraction, bound: int) -> Fraction:
    pre, n, _ = orbit(theta, 2)
    if pre:
        raise ValueError(f"{format_angle(theta)} is not periodic")
    if n == 1:
        raise LandsAlone("the period-1 ray lands alone")
    if n <= bound:
        q = (1 << n) - 1
        k = theta.numerator * (q // theta.denominator)
        return Fraction(_table(n).partners[n][k], q)
    return _conjugate_local(theta, n)


def ray_pair(theta: Angle, bound: int = LAMINATION_BOUND) -> RayPair:
    theta = angle(theta)
    other = conjugate_angle(theta, bound)
    lo, hi = sorted((theta, other))
    return RayPair(lo, hi, orbit(theta, 2)[1])


@lru_cache(maxsize=None)
def period_pairs(n: int) -> tuple[RayPair, ...]:
    """All lamination pairs of exact period ``n``, sorted by minus angle."""
    if not 2 <= n <= _HARD_LIMIT:
        raise ResourceBound(f"period {n} outside [2, {_HARD_LIMIT}]")
    q = (1 << n) - 1
    partners = _table(n).partners[n]
    pairs = [RayPair(Fraction(a, q), Fraction(b, q), n)
             for a, b in partners.items() if a < b]
    return tuple(sorted(pairs, key=lambda p: p.minus))
