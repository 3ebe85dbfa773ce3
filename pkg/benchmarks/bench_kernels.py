"""Time the compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import cmath
import timeit

import numpy as np

from multibrot.numerics import kernels


def continuation(k, theta, depth=40, substeps=4, radius=100.0):
    """Follow one parameter ray inward the way the ray tracer does."""
    w = radius * cmath.exp(2j * cmath.pi * theta)
    for j in range(depth * substeps + 1):
        g = cmath.log(radius).real * 2 ** (-j / substeps)
        m = j // substeps
        target = cmath.exp(2 ** m * g) * cmath.exp(2j * cmath.pi * ((2 ** m * theta) % 1))
        w, _, ok = k.newton_ray_point(w, target, 0j, m, True, 2, 200, 1e-12)
        if not ok:
            break
    return w


def cases():
    z = (np.linspace(-2, 2, 200)[None, :] + 1j * np.linspace(-2, 2, 200)[:, None]).ravel()
    return {
        "escape_counts 800x600x500": lambda k: k.escape_counts(
            -2.5, 1.25, 3.5 / 800, 2.5 / 600, 800, 600, 500, 2, 4.0),
        "green 40k points": lambda k: k.green(-0.12 + 0.74j, z, 2000, 2, 1e10),
        "newton ray continuation x8": lambda k: [
            continuation(k, t / 17) for t in range(1, 9)],
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled is None:
        print("compiled extension not available; timing the Python kernels only")
    backends = [("python", kernels.pure)]
    if kernels.compiled is not None:
        backends.insert(0, ("cython", kernels.compiled))
    print(f"{'kernel':28s}" + "".join(f"{n:>12s}" for n, _ in backends) + "     speedup")
    for name, fn in cases().items():
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
                 for _, k in backends]
        speed = f"{times[-1] / times[0]:10.1f}x" if len(times) == 2 else ""
        print(f"{name:28s}" + "".join(f"{t:11.3f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
