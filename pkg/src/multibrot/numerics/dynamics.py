"""Iteration and Newton solvers for p_c(z) = z^d + c."""
from __future__ import annotations

import cmath
from math import isfinite

from .config import DEFAULT, NumericsConfig

#: magnitude at which an orbit is declared escaped and frozen
ESCAPE_CAP = 1e150


class SeedError(ArithmeticError):
    """Newton did not converge from the given seed."""


class DegenerateRoot(ArithmeticError):
    """The root found also solves an equation of smaller preperiod or period."""


def iterate(c: complex, z: complex, k: int, degree: int = 2) -> complex:
    """k-fold application of z -> z^d + c.

    Orbits that pass ESCAPE_CAP stop there; test with :func:`has_escaped`.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    z = complex(z)
    for _ in range(k):
        if abs(z) > ESCAPE_CAP:
            return z / abs(z) * ESCAPE_CAP
        z = z ** degree + c
    return z


def has_escaped(z: complex) -> bool:
    return not isfinite(abs(z)) or abs(z) >= ESCAPE_CAP


def _critical_orbit(c: complex, n: int, degree: int):
    """p_c^j(0) and its c-derivative for j = 0..n."""
    z, dz = 0j, 0j
    out = [(z, dz)]
    for _ in range(n):
        dz = degree * z ** (degree - 1) * dz + 1
        z = z ** degree + c
        out.append((z, dz))
    return out


def _newton(f, seed: complex, cfg: NumericsConfig) -> complex:
    c = complex(seed)
    for _ in range(cfg.newton_steps):
        val, der = f(c)
        if abs(val) < cfg.solver_tol:
            return c
        if der == 0 or not isfinite(abs(val)):
            break
        c -= val / der
    val, _ = f(c)
    if abs(val) < cfg.solver_tol:
        return c
    raise SeedError(f"Newton did not converge from {seed}")


def center_residual(c: complex, n: int, degree: int = 2) -> float:
    return abs(_critical_orbit(c, n, degree)[n][0])


def find_center(n: int, seed: complex, cfg: NumericsConfig = DEFAULT) -> complex:
    """Root of c -> p_c^n(0) near ``seed``."""
    if n < 1:
        raise ValueError("period must be >= 1")
    return _newton(lambda c: _critical_orbit(c, n, cfg.degree)[n], seed, cfg)


def exact_center_period(c: complex, n: int, degree: int = 2, tol: float = 1e-9) -> int:
    """Smallest k | n with p_c^k(0) ~ 0."""
    orbit = _critical_orbit(c, n, degree)
    for k in range(1, n + 1):
        if n % k == 0 and abs(orbit[k][0]) < tol:
            return k
    return n


def misiurewicz_residual(c: complex, pre: int, per: int, degree: int = 2) -> float:
    orbit = _critical_orbit(c, pre + per, degree)
    return abs(orbit[pre + per][0] - orbit[pre][0])


def find_misiurewicz(pre: int, per: int, seed: complex, cfg: NumericsConfig = DEFAULT,
                     reject_tol: float | None = None) -> complex:
    """Root of p_c^(pre+per)(0) = p_c^pre(0) with exact preperiod and period.

    Roots that also solve the equation with a smaller preperiod, or with a
    proper divisor of the period, raise :class:`DegenerateRoot`.  Such roots
    are multiple, so Newton only pins them to about sqrt(solver_tol); the
    default rejection tolerance is scaled to match.
    """
    if reject_tol is None:
        reject_tol = 10 * cfg.solver_tol ** 0.5
    if pre < 1 or per < 1:
        raise ValueError("preperiod and period must be >= 1")

    def f(c):
        orbit = _critical_orbit(c, pre + per, cfg.degree)
        (a, da), (b, db) = orbit[pre + per], orbit[pre]
        return a - b, da - db

    c = _newton(f, seed, cfg)
    orbit = _critical_orbit(c, pre + per, cfg.degree)
    if abs(orbit[pre - 1 + per][0] - orbit[pre - 1][0]) < reject_tol:
        raise DegenerateRoot(f"{c} has preperiod below {pre}")
    for k in range(1, per):
        if per % k == 0 and abs(orbit[pre + k][0] - orbit[pre][0]) < reject_tol:
            raise DegenerateRoot(f"{c} has period {k}, a proper divisor of {per}")
    return c


def _cycle_jet(z: complex, c: complex, n: int, d: int):
    """p^n(z) with derivatives: value, d/dz, d/dc, d2/dz2, d2/dzdc."""
    a, b, aa, ab = 1 + 0j, 0j, 0j, 0j
    for _ in range(n):
        zd2 = z ** (d - 2) if d > 2 else 1
        zd1 = zd2 * z
        aa = d * (d - 1) * zd2 * a * a + d * zd1 * aa
        ab = d * (d - 1) * zd2 * a * b + d * zd1 * ab
        a = d * zd1 * a
        b = d * zd1 * b + 1
        z = zd1 * z + c
    return z, a, b, aa, ab


def _solve_cycle(z: complex, c: complex, n: int, target: complex,
                 cfg: NumericsConfig) -> tuple[complex, complex, bool]:
    """2x2 Newton for p^n(z) = z, (p^n)'(z) = target in the unknowns (z, c)."""
    for _ in range(cfg.newton_steps):
        w, a, b, aa, ab = _cycle_jet(z, c, n, cfg.degree)
        f1, f2 = w - z, a - target
        if abs(f1) < cfg.solver_tol and abs(f2) < cfg.solver_tol:
            return z, c, True
        det = (a - 1) * ab - b * aa
        if det == 0 or not isfinite(abs(det)):
            break
        z -= (ab * f1 - b * f2) / det
        c -= ((a - 1) * f2 - aa * f1) / det
    return z, c, False


def internal_ray_point(center: complex, n: int, mu: complex = 1.0,
                       cfg: NumericsConfig = DEFAULT) -> tuple[complex, complex]:
    """Parameter where the period-n cycle of the component has multiplier ``mu``.

    Continues (z, c) from the center (z = 0, multiplier 0) along the straight
    internal ray to ``mu``; ``mu = 1`` gives the root.  Returns (c, z).

    At a satellite root the period-n cycle collapses onto a cycle of period
    k | n whose multiplier is a root of unity, and the system above turns
    singular; the last step then solves for that parent cycle instead.
    """
    z, c = 0j, complex(center)
    steps = cfg.internal_steps
    levels = [mu * j / steps for j in range(1, steps)]
    if abs(mu) >= 1:
        levels += [mu * (1 - 10.0 ** -e) for e in range(3, 7)]
    levels.append(mu)
    for target in levels[:-1]:
        z, c, ok = _solve_cycle(z, c, n, target, cfg)
        if not ok:
            raise SeedError(f"internal ray stalled at multiplier {target}")
    z1, c1, ok = _solve_cycle(z, c, n, mu, cfg)
    if ok and abs(mu) < 1:
        return c1, z1
    # at |mu| = 1 prefer a parent cycle whose multiplier hits a root of unity
    for k in range(1, n):
        q = n // k
        if n % k or q < 2:
            continue
        lam = multiplier(c, z, k, cfg.degree)
        if abs(lam ** q - mu) > 1e-3:
            continue
        nearest = min((cmath.rect(abs(mu) ** (1 / q), (cmath.phase(mu) + 2 * cmath.pi * j) / q)
                       for j in range(q)), key=lambda r: abs(r - lam))
        zk, ck, okk = _solve_cycle(z, c, k, nearest, cfg)
        if okk:
            return ck, zk
    if ok:
        return c1, z1
    raise SeedError(f"internal ray stalled at multiplier {mu}")


def find_periodic_point(c: complex, per: int, seed: complex, pre: int = 0,
                        cfg: NumericsConfig = DEFAULT) -> complex:
    """Newton for p^(pre+per)(z) = p^pre(z) in the dynamic plane."""
    d = cfg.degree

    def f(z):
        w, dw = z, 1 + 0j
        head, dhead = (z, dw) if pre == 0 else (None, None)
        for j in range(1, pre + per + 1):
            dw = d * w ** (d - 1) * dw
            w = w ** d + c
            if j == pre:
                head, dhead = w, dw
        return w - head, dw - dhead

    return _newton(f, seed, cfg)


def multiplier(c: complex, z: complex, per: int, degree: int = 2) -> complex:
    dw = 1 + 0j
    for _ in range(per):
        dw *= degree * z ** (degree - 1)
        z = z ** degree + c
    return dw


def alpha_fixed_point(c: complex) -> complex:
    """The fixed point of z^2 + c that is not the beta fixed point."""
    return (1 - cmath.sqrt(1 - 4 * c)) / 2
