"""Exact rational angles on the circle R/Z under z -> d*z.

Angles are plain :class:`fractions.Fraction` values reduced into [0, 1).
Expansions are eventually periodic base-d digit words.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Angle = Fraction

AngleLike = Union[Fraction, int, str]


class InvalidDegree(ValueError):
    pass


class InvalidDigit(ValueError):
    pass


def _check_degree(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise InvalidDegree(f"degree must be an integer >= 2, got {d!r}")


def angle(value: AngleLike, denominator: int | None = None) -> Angle:
    """Build an angle reduced mod 1. Accepts 'p/q' strings as well as numbers."""
    if denominator is not None:
        value = Fraction(value, denominator)
    elif isinstance(value, str):
        value = parse_angle(value)
    else:
        value = Fraction(value)
    return value % 1


def parse_angle(text: str) -> Angle:
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        num, den = int(p), int(q)
        if den <= 0:
            raise ValueError(f"bad angle denominator in {text!r}")
        return Fraction(num, den) % 1
    if text.lstrip("-").isdigit():
        return Fraction(int(text)) % 1
    raise ValueError(f"angles must be exact fractions 'p/q', got {text!r}")


def format_angle(theta: Angle) -> str:
    theta = Fraction(theta) % 1
    return f"{theta.numerator}/{theta.denominator}"


def multiply_map(theta: Angle, d: int = 2) -> Angle:
    _check_degree(d)
    return (d * Fraction(theta)) % 1


def orbit(theta: Angle, d: int = 2) -> tuple[int, int, list[Angle]]:
    """Forward orbit of ``theta``; returns (preperiod, period, distinct points)."""
    _check_degree(d)
    x = Fraction(theta) % 1
    seen: dict[Angle, int] = {}
    points: list[Angle] = []
    while x not in seen:
        seen[x] = len(points)
        points.append(x)
        x = (d * x) % 1
    pre = seen[x]
    return pre, len(points) - pre, points


def period(theta: Angle, d: int = 2) -> int:
    """Exact period of a periodic angle; raises for strictly preperiodic ones."""
    pre, per, _ = orbit(theta, d)
    if pre:
        raise ValueError(f"{format_angle(theta)} is not periodic under x{d}")
    return per


def is_periodic(theta: Angle, d: int = 2) -> bool:
    # periodic under x d iff the reduced denominator is coprime to d
    return gcd(Fraction(theta).denominator, d) == 1


def is_d_adic(theta: Angle, d: int = 2) -> bool:
    q = (Fraction(theta) % 1).denominator
    g = gcd(q, d)
    while g > 1:
        while q % g == 0:
            q //= g
        g = gcd(q, d)
    return q == 1


@dataclass(frozen=True)
class Expansion:
    base: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        _check_degree(self.base)
        if not self.period:
            raise ValueError("period word must be non-empty")
        for digit in self.preperiod + self.period:
            if not 0 <= digit < self.base:
                raise InvalidDigit(f"digit {digit} out of range for base {self.base}")

    @classmethod
    def parse(cls, text: str) -> "Expansion":
        """Parse ``'base:preperiod|period'``, e.g. ``'2:01|10'``."""
        base_s, rest = text.split(":", 1)
        pre_s, per_s = rest.split("|", 1)
        base = int(base_s)
        try:
            pre = tuple(int(ch, 36) for ch in pre_s)
            per = tuple(int(ch, 36) for ch in per_s)
        except ValueError as exc:
            raise InvalidDigit(str(exc)) from None
        return cls(base, pre, per)

    def __str__(self) -> str:
        digits = "0123456789abcdefghijklmnopqrstuvwxyz"
        return (f"{self.base}:" + "".join(digits[i] for i in self.preperiod)
                + "|" + "".join(digits[i] for i in self.period))

    def digits(self, n: int) -> list[int]:
        """First ``n`` digits of the infinite word."""
        out = list(self.preperiod[:n])
        while len(out) < n:
            out.extend(self.period)
        return out[:n]

    def shift(self) -> "Expansion":
        if self.preperiod:
            return canonical(Expansion(self.base, self.preperiod[1:], self.period))
        return canonical(Expansion(self.base, (), self.period[1:] + self.period[:1]))

    def canonical(self) -> "Expansion":
        return canonical(self)


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    for k in range(1, n + 1):
        if n % k == 0 and word[:k] * (n // k) == word:
            return word[:k]
    return word


def canonical(e: Expansion) -> Expansion:
    """Reduce the period to a primitive word and the preperiod to minimal length.

    This does not convert between the two forms of a d-adic angle.
    """
    pre = list(e.preperiod)
    per = list(_primitive_root(e.period))
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return Expansion(e.base, tuple(pre), tuple(per))


def _word_value(word, base: int) -> int:
    # split in halves so long period words stay subquadratic
    if len(word) <= 64:
        v = 0
        for digit in word:
            v = v * base + digit
        return v
    mid = len(word) // 2
    right = word[mid:]
    return _word_value(word[:mid], base) * base ** len(right) + _word_value(right, base)


def from_expansion(e: Expansion) -> Angle:
    d = e.base
    m, k = len(e.preperiod), len(e.period)
    head = _word_value(e.preperiod, d)
    tail = _word_value(e.period, d)
    return Fraction(head * (d**k - 1) + tail, d**m * (d**k - 1)) % 1


def _to_digits(x: int, base: int, width: int) -> tuple[int, ...]:
    if base == 2:
        return tuple(map(int, format(x, f"0{width}b"))) if width else ()
    if width <= 64:
        out = []
        for _ in range(width):
            x, r = divmod(x, base)
            out.append(r)
        return tuple(reversed(out))
    half = width // 2
    hi, lo = divmod(x, base ** half)
    return _to_digits(hi, base, width - half) + _to_digits(lo, base, half)


@lru_cache(maxsize=4096)
def _shape(q: int, d: int) -> tuple[int, int]:
    """(preperiod, period) of every angle with reduced denominator q."""
    coprime = q
    g = gcd(coprime, d)
    while g > 1:
        coprime //= g
        g = gcd(coprime, d)
    smooth = q // coprime
    m, power = 0, 1
    while power % smooth:
        power *= d
        m += 1
    k, r = 1, d % coprime
    while coprime > 1 and r != 1:
        r = r * d % coprime
        k += 1
    return m, k


def to_expansion(theta: Angle, d: int = 2) -> Expansion:
    """Canonical expansion; d-adic angles end in repeating 0.

    The preperiod length is the least m with the d-smooth part of the
    denominator dividing d^m, the period is the order of d modulo the rest.
    """
    _check_degree(d)
    x = Fraction(theta) % 1
    p, q = x.numerator, x.denominator
    m, k = _shape(q, d)
    scaled = p * d**m * (d**k - 1) // q
    head, tail = divmod(scaled, d**k - 1)
    return Expansion(d, _to_digits(head, d, m), _to_digits(tail, d, k))


def dual_expansions(theta: Angle, d: int = 2) -> list[Expansion]:
    """Both expansions of a d-adic angle (zeros-tail first); one otherwise."""
    e = to_expansion(theta, d)
    if e.period != (0,):
        return [e]
    pre = list(e.preperiod)
    if not pre:
        return [e, Expansion(d, (), (d - 1,))]
    pre[-1] -= 1
    return [e, canonical(Expansion(d, tuple(pre), (d - 1,)))]
