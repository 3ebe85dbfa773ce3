"""Command-line front end.

Results go to stdout (plain text for scalars, JSON otherwise); a run manifest
goes to stderr.  Exit codes: 0 success, 1 domain error, 2 usage error,
3 inconclusive numerical verdict.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .angles import Expansion, dual_expansions, format_angle, from_expansion, orbit, to_expansion
from .combinatorics import (LAMINATION_BOUND, build_lamination, conjugate_angle,
                            internal_address, kneading, ray_pair)
from .combinatorics import RayPair
from .fibers import arc_skeleton, fiber_interval, fiber_transfer_check
from .numerics.config import load_config
from .numerics.dynamics import (center_residual, find_center, find_misiurewicz,
                                misiurewicz_residual)
from .numerics.rays import (Inconclusive, trace_dynamic_ray, trace_parameter_ray,
                            verify_ray_pair)
from .tuning import ComponentSignature, decoration_angles, locate, tune, untune

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_FRACTION = re.compile(r"^\d+/\d+$")


class _Inconclusive(Exception):
    """Raised by a handler after printing an inconclusive verdict."""


def angle_arg(text: str) -> Fraction:
    if not _FRACTION.match(text):
        raise argparse.ArgumentTypeError(f"angles are exact fractions p/q, got {text!r}")
    num, den = (int(v) for v in text.split("/"))
    if den == 0:
        raise argparse.ArgumentTypeError("zero denominator")
    return Fraction(num, den) % 1


def complex_arg(text: str) -> complex:
    text = text.strip()
    try:
        if "," in text:
            re_, im = text.split(",", 1)
            return complex(float(re_), float(im))
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def pair_arg(text: str) -> RayPair:
    try:
        a, b = text.split(":")
    except ValueError:
        raise argparse.ArgumentTypeError(f"ray pair is a:b, got {text!r}") from None
    a, b = sorted((angle_arg(a), angle_arg(b)))
    return RayPair(a, b)


def pairs_arg(text: str) -> list[RayPair]:
    return [pair_arg(t) for t in text.split(",") if t]


def _c_json(z: complex) -> list[float]:
    return [z.real, z.imag]


def _emit(obj) -> None:
    if isinstance(obj, str):
        print(obj)
    else:
        print(json.dumps(obj))


def _write(ctx, text: str | bytes) -> None:
    path = Path(ctx.args.out)
    if isinstance(text, bytes):
        path.write_bytes(text)
    else:
        path.write_text(text)
    ctx.outputs.append(str(path))


class _Context:
    def __init__(self, args):
        self.args = args
        self.outputs: list[str] = []
        path = args.config or os.environ.get("MULTIBROT_CONFIG")
        cfg = load_config(path)
        self.cfg = cfg.with_overrides(degree=args.degree)

    @property
    def max_period(self) -> int:
        return self.args.max_period


# -- handlers -----------------------------------------------------------------

def cmd_angle(ctx):
    a = ctx.args
    d = ctx.cfg.degree
    if a.action == "orbit":
        pre, per, pts = orbit(a.theta, d)
        _emit({"angle": format_angle(a.theta), "preperiod": pre, "period": per,
               "orbit": [format_angle(p) for p in pts]})
    elif a.action == "expansion":
        _emit({"angle": format_angle(a.theta), "expansion": str(to_expansion(a.theta, d)),
               "expansions": [str(e) for e in dual_expansions(a.theta, d)]})
    else:
        _emit(format_angle(from_expansion(Expansion.parse(a.text))))


def cmd_pair(ctx):
    a = ctx.args
    bound = max(ctx.max_period or LAMINATION_BOUND, LAMINATION_BOUND)
    if a.action == "conjugate":
        _emit(format_angle(conjugate_angle(a.theta, bound)))
    elif a.action == "of":
        _emit(ray_pair(a.theta, bound).to_json())
    else:
        lam = build_lamination(ctx.max_period or 6, bound)
        if a.out:
            _write(ctx, lam.to_text())
        _emit(json.loads(lam.to_json()))


def cmd_address(ctx):
    a = ctx.args
    if a.action == "kneading":
        _emit(str(kneading(a.theta)))
    else:
        _emit(str(internal_address(a.theta, a.depth or 64)))


def cmd_tune(ctx):
    _emit([format_angle(t) for t in tune(ctx.args.component, ctx.args.theta)])


def cmd_untune(ctx):
    _emit(format_angle(untune(ctx.args.component, ctx.args.theta)))


def cmd_decorations(ctx):
    _emit([p.to_json() for p in decoration_angles(ctx.args.component, ctx.args.depth or 2)])


def cmd_locate(ctx):
    _emit(locate(ctx.args.component, ctx.args.theta, ctx.args.depth or 4).to_json())


def cmd_fiber(ctx):
    a = ctx.args
    if a.action == "interval":
        report = fiber_interval(a.theta, ctx.max_period or 8)
        if a.out:
            _write(ctx, report.to_csv())
        _emit(json.loads(report.to_json()) | {
            "interval": [format_angle(report.final.left), format_angle(report.final.right)]})
    elif a.action == "transfer":
        _emit(str(fiber_transfer_check(a.component, a.theta, ctx.max_period or 8)).lower())
    else:
        _emit(json.loads(arc_skeleton(a.theta, a.depth or 16).to_json()))


def cmd_bd(ctx):
    from .surgery import INCONCLUSIVE, MEMBER, NON_MEMBER, bd_membership_symbolic, bd_orbit
    a = ctx.args
    if a.action == "symbolic":
        _emit(MEMBER if bd_membership_symbolic(a.theta) else NON_MEMBER)
        return
    report = bd_orbit(a.c, a.max_iter, ctx.cfg)
    if a.out:
        _write(ctx, report.to_csv())
    _emit(report.verdict)
    if report.verdict == INCONCLUSIVE:
        raise _Inconclusive


def cmd_little_julia(ctx):
    from .surgery import little_julia_escape
    a = ctx.args
    verdict = little_julia_escape(a.c, a.pairs, a.n, a.z, a.max_iter, ctx.cfg)
    _emit(str(verdict))
    if verdict.kind == "inconclusive":
        raise _Inconclusive


def cmd_solve(ctx):
    a = ctx.args
    cfg = ctx.cfg
    if a.action == "center":
        c = find_center(a.n, a.seed, cfg)
        res = center_residual(c, a.n, cfg.degree)
        _emit({"c": _c_json(c), "period": a.n, "residual": res})
    else:
        c = find_misiurewicz(a.pre, a.per, a.seed, cfg)
        res = misiurewicz_residual(c, a.pre, a.per, cfg.degree)
        _emit({"c": _c_json(c), "preperiod": a.pre, "period": a.per, "residual": res})


def cmd_ray(ctx):
    a = ctx.args
    cfg = ctx.cfg
    if a.action == "trace":
        if a.c is None:
            tr = trace_parameter_ray(a.theta, a.depth, cfg)
        else:
            tr = trace_dynamic_ray(a.c, a.theta, a.depth, cfg)
        if a.out:
            _write(ctx, tr.to_csv())
        _emit(tr.to_json())
        if not tr.converged:
            raise _Inconclusive
    else:
        pair = RayPair(*sorted((a.theta, a.other)))
        try:
            ok = verify_ray_pair(pair, a.c, a.tol or 1e-6, a.depth, cfg)
        except Inconclusive:
            _emit("inconclusive")
            raise _Inconclusive
        _emit(str(ok).lower())


def cmd_puzzle(ctx):
    from .numerics.puzzle import puzzle_diameters
    a = ctx.args
    report = puzzle_diameters(a.c, a.pairs, a.target, a.depth if a.depth is not None else 4,
                              ctx.cfg)
    _emit(report.to_json())


def cmd_render(ctx):
    from .numerics.render import Region, render, write_pgm
    a = ctx.args
    overlays = []
    for t in a.rays or []:
        overlays.append(trace_parameter_ray(t, a.depth, ctx.cfg).polyline())
    img = render(Region.parse(a.region), a.width, a.height, a.max_iter, overlays, ctx.cfg)
    out = a.out or "render.pgm"
    write_pgm(out, img)
    ctx.outputs.append(out)
    _emit({"image": out, "width": a.width, "height": a.height})


# -- parser -------------------------------------------------------------------

def _common(default=None) -> argparse.ArgumentParser:
    # nested parsers use SUPPRESS so they never overwrite a flag given earlier
    p = argparse.ArgumentParser(add_help=False, argument_default=default)
    g = p.add_argument_group("common options")
    g.add_argument("--max-period", type=int)
    g.add_argument("--depth", type=int)
    g.add_argument("--tol", type=float)
    g.add_argument("--config", help="key=value numerics configuration")
    g.add_argument("--out", help="file for written output")
    g.add_argument("--degree", type=int)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="multibrot", parents=[_common()],
                                     description="Mandelbrot set combinatorics and numerics")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("angle", cmd_angle, "orbit and digit expansions of an angle")
    ps = p.add_subparsers(dest="action", required=True)
    for act in ("orbit", "expansion"):
        ps.add_parser(act, parents=[common]).add_argument("theta", type=angle_arg)
    ps.add_parser("value", parents=[common],
                  help="angle of an expansion 'base:pre|per'").add_argument("text")

    p = add("pair", cmd_pair, "periodic ray pairs and the lamination")
    ps = p.add_subparsers(dest="action", required=True)
    ps.add_parser("conjugate", parents=[common]).add_argument("theta", type=angle_arg)
    ps.add_parser("of", parents=[common]).add_argument("theta", type=angle_arg)
    ps.add_parser("lamination", parents=[common])

    p = add("address", cmd_address, "kneading sequence and internal address")
    ps = p.add_subparsers(dest="action", required=True)
    for act in ("kneading", "internal"):
        ps.add_parser(act, parents=[common]).add_argument("theta", type=angle_arg)

    for name, func in (("tune", cmd_tune), ("untune", cmd_untune), ("locate", cmd_locate)):
        p = add(name, func, f"{name} an angle with a component 'n:p/q'")
        p.add_argument("component", type=ComponentSignature.parse)
        p.add_argument("theta", type=angle_arg)
    p = add("decorations", cmd_decorations, "decoration ray pairs of a component")
    p.add_argument("component", type=ComponentSignature.parse)

    p = add("fiber", cmd_fiber, "fiber interval reports and arc skeletons")
    ps = p.add_subparsers(dest="action", required=True)
    ps.add_parser("interval", parents=[common]).add_argument("theta", type=angle_arg)
    q = ps.add_parser("transfer", parents=[common])
    q.add_argument("component", type=ComponentSignature.parse)
    q.add_argument("theta", type=angle_arg)
    ps.add_parser("skeleton", parents=[common]).add_argument("theta", type=angle_arg)

    p = add("bd", cmd_bd, "Branner-Douady membership in the 1/3-limb")
    ps = p.add_subparsers(dest="action", required=True)
    ps.add_parser("symbolic", parents=[common]).add_argument("theta", type=angle_arg)
    q = ps.add_parser("numeric", parents=[common])
    q.add_argument("c", type=complex_arg)
    q.add_argument("--max-iter", type=int, default=200)

    p = add("little-julia", cmd_little_julia, "confinement under p^n to a region cut by ray pairs")
    p.add_argument("c", type=complex_arg)
    p.add_argument("--pairs", type=pairs_arg, required=True, help="a:b,c:d,...")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", type=complex_arg, default=0j)
    p.add_argument("--max-iter", type=int, default=1000)

    p = add("solve", cmd_solve, "hyperbolic centers and Misiurewicz points")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("center", parents=[common])
    q.add_argument("n", type=int)
    q.add_argument("seed", type=complex_arg)
    q = ps.add_parser("misiurewicz", parents=[common])
    q.add_argument("pre", type=int)
    q.add_argument("per", type=int)
    q.add_argument("seed", type=complex_arg)

    p = add("ray", cmd_ray, "trace external rays and verify ray pairs")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("trace", parents=[common])
    q.add_argument("theta", type=angle_arg)
    q.add_argument("--c", type=complex_arg, default=None, help="dynamic plane of p_c")
    q = ps.add_parser("verify", parents=[common])
    q.add_argument("theta", type=angle_arg)
    q.add_argument("other", type=angle_arg)
    q.add_argument("--c", type=complex_arg, default=None, help="dynamic plane of p_c")

    p = add("puzzle", cmd_puzzle, "diameters of nested puzzle pieces")
    p.add_argument("c", type=complex_arg)
    p.add_argument("--pairs", type=pairs_arg, required=True)
    p.add_argument("--target", type=complex_arg, required=True)

    p = add("render", cmd_render, "escape-time PGM image of the parameter plane")
    p.add_argument("--region", default="-2.5,1,-1.25,1.25", help="xmin,xmax,ymin,ymax")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--rays", type=lambda s: [angle_arg(t) for t in s.split(",")],
                   default=None, help="parameter ray angles to overlay")
    return parser


def _manifest(argv, ctx, started: float, code: int) -> dict:
    return {
        "argv": list(argv),
        "version": __version__,
        "config": ctx.cfg.as_dict() if ctx else None,
        "outputs": ctx.outputs if ctx else [],
        "exit_code": code,
        "duration_s": round(time.perf_counter() - started, 6),
    }


_NEGATIVE = re.compile(r"^-\.?\d")


def _protect_negatives(argv: list[str]) -> list[str]:
    # argparse reads "-0.1,0.7" as an option; a leading space keeps it positional
    return [" " + a if _NEGATIVE.match(a) else a for a in argv]


def dispatch(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    started = time.perf_counter()
    ctx = None
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negatives(argv))
        ctx = _Context(args)
        args.func(ctx)
        code = EXIT_OK
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except _Inconclusive:
        code = EXIT_INCONCLUSIVE
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        code = EXIT_INCONCLUSIVE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_DOMAIN
    print(json.dumps(_manifest(argv, ctx, started, code)), file=sys.stderr)
    return code


def main() -> None:
    sys.exit(dispatch())
