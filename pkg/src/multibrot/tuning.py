"""Tuning on external angles: binary-word substitution and its inverse."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .angles import (Angle, Expansion, _word_value, angle, dual_expansions, format_angle,
                     from_expansion, orbit, parse_angle, to_expansion)
from .combinatorics import RayPair, ray_pair


class NotInCopy(ValueError):
    """The angle admits no block decomposition over the component's words."""


@dataclass(frozen=True)
class ComponentSignature:
    """A hyperbolic component of the Mandelbrot set, named by its root ray pair.

    ``words`` are the period words of the two root angles; the period-1
    signature uses the words "0" and "1" and acts as the identity.
    """
    period: int
    root_pair: RayPair | None
    words: tuple[str, str]

    @classmethod
    def identity(cls) -> "ComponentSignature":
        return cls(1, None, ("0", "1"))

    @classmethod
    def from_angle(cls, theta: Angle) -> "ComponentSignature":
        theta = angle(theta)
        pre, n, _ = orbit(theta, 2)
        if pre:
            raise ValueError(f"root angle {format_angle(theta)} is not periodic")
        if n == 1:
            return cls.identity()
        pair = ray_pair(theta)
        words = tuple("".join(map(str, to_expansion(a, 2).period))
                      for a in (pair.minus, pair.plus))
        return cls(n, pair, words)

    @classmethod
    def parse(cls, text: str) -> "ComponentSignature":
        """Parse ``'n:p/q'`` (period and one root angle)."""
        n_s, theta_s = text.split(":", 1)
        sig = cls.from_angle(parse_angle(theta_s))
        if sig.period != int(n_s):
            raise ValueError(f"{theta_s} has period {sig.period}, not {n_s}")
        return sig

    def __str__(self) -> str:
        if self.root_pair is None:
            return "1:0/1"
        return f"{self.period}:{format_angle(self.root_pair.minus)}"


BASILICA = None  # filled lazily by basilica()


def basilica() -> ComponentSignature:
    global BASILICA
    if BASILICA is None:
        BASILICA = ComponentSignature.from_angle(Fraction(1, 3))
    return BASILICA


def _substitute(e: Expansion, words: tuple[str, str]) -> Angle:
    # equal-length words: substitution is re-reading the digits in base 2^n
    n = len(words[0])
    vals = (int(words[0], 2), int(words[1], 2))
    base = 1 << n
    m, k = n * len(e.preperiod), n * len(e.period)
    head = _word_value([vals[x] for x in e.preperiod], base)
    tail = _word_value([vals[x] for x in e.period], base)
    return Fraction(head * ((1 << k) - 1) + tail, (1 << m) * ((1 << k) - 1)) % 1


def tune(comp: ComponentSignature, theta: Angle) -> tuple[Angle, ...]:
    """Images of ``theta`` under tuning, sorted.

    A dyadic angle has two binary expansions and hence two images: the ray pair
    of the decoration it becomes.  Angle 0 uses only its all-zeros expansion and
    maps to the minus root angle.
    """
    theta = angle(theta)
    if theta == 0:
        expansions = [to_expansion(theta, 2)]
    else:
        expansions = dual_expansions(theta, 2)
    return tuple(sorted({_substitute(e, comp.words) for e in expansions}))


def untune(comp: ComponentSignature, theta: Angle) -> Angle:
    """Inverse of :func:`tune`; raises :class:`NotInCopy` off the tuned angle set."""
    theta = angle(theta)
    e = to_expansion(theta, 2)
    n = comp.period
    m, lp = len(e.preperiod), len(e.period)
    word_index = {w: str(i) for i, w in enumerate(comp.words)}

    def normalize(pos: int) -> int:
        return pos if pos < m else m + (pos - m) % lp

    seen: dict[int, int] = {}
    decoded: list[str] = []
    pos = 0
    while pos not in seen:
        seen[pos] = len(decoded)
        block = "".join(map(str, e.digits(pos + n)[pos:]))
        if block not in word_index:
            raise NotInCopy(f"{format_angle(theta)} is not in the tuned copy {comp}")
        decoded.append(word_index[block])
        pos = normalize(pos + n)
    start = seen[pos]
    pre = tuple(int(c) for c in decoded[:start])
    per = tuple(int(c) for c in decoded[start:])
    return from_expansion(Expansion(2, pre, per))


def decoration_angles(comp: ComponentSignature, max_n: int) -> list[RayPair]:
    """Ray pairs at the tuned images of the dyadic angles a/2^k, k <= max_n."""
    if comp.period < 2 and max_n > 0:
        raise ValueError("decorations need a component of period >= 2")
    out = []
    for k in range(1, max_n + 1):
        for a in range(1, 1 << k, 2):
            lo, hi = tune(comp, Fraction(a, 1 << k))
            out.append(RayPair(lo, hi))
    out.sort(key=lambda p: p.minus)
    return out


@dataclass(frozen=True)
class Location:
    kind: str  # inside_copy | in_decoration | outside_wake | undecided
    pair: RayPair | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "pair": self.pair.to_json() if self.pair else None}


def locate(comp: ComponentSignature, theta: Angle, depth: int) -> Location:
    theta = angle(theta)
    root = comp.root_pair
    if root is not None and not root.contains(theta):
        return Location("outside_wake")
    if root is not None:
        for pair in decoration_angles(comp, depth):
            if pair.contains(theta):
                return Location("in_decoration", pair)
    try:
        untune(comp, theta)
    except NotInCopy:
        return Location("undecided")
    return Location("inside_copy")
