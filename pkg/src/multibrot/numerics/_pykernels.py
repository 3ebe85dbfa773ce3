"""Pure Python/numpy fallbacks for the compiled kernels in _ckernels.pyx."""
from __future__ import annotations

import cmath

import numpy as np


def newton_ray_point(seed: complex, target: complex, c: complex, n_iter: int,
                     parameter: bool, degree: int, max_steps: int, tol: float):
    w = complex(seed)
    it = 0
    ok = False
    for it in range(max_steps):
        z = w
        dz = 1
        try:
            if parameter:
                for _ in range(n_iter):
                    zd1 = z ** (degree - 1)
                    dz = degree * zd1 * dz + 1
                    z = zd1 * z + w
            else:
                for _ in range(n_iter):
                    zd1 = z ** (degree - 1)
                    dz = degree * zd1 * dz
                    z = zd1 * z + c
        except OverflowError:
            break
        if dz == 0:
            break
        step = (z - target) / dz
        if not cmath.isfinite(step):
            break
        w = w - step
        if abs(step) <= tol * (1.0 + abs(w)):
            ok = True
            it += 1
            break
    return w, it, ok


def escape_counts(x0, y0, dx, dy, width, height, max_iter, degree, escape_r2):
    # real arithmetic in the same order as the compiled loop, so both agree bitwise
    cx = np.broadcast_to(x0 + np.arange(width) * dx, (height, width)).ravel()
    cy = np.broadcast_to((y0 - np.arange(height) * dy)[:, None], (height, width)).ravel()
    x = np.zeros(cx.shape)
    y = np.zeros(cx.shape)
    counts = np.full(cx.shape, max_iter, dtype=np.uint32)
    idx = np.arange(cx.size)
    for n in range(max_iter):
        if degree == 2:
            x2, y2 = x * x, y * y
            y = 2.0 * x * y + cy
            x = x2 - y2 + cx
        else:
            px, py = x, y
            for _ in range(degree - 1):
                px, py = px * x - py * y, px * y + py * x
            x, y = px + cx, py + cy
        out = x * x + y * y > escape_r2
        if out.any():
            counts[idx[out]] = n
            keep = ~out
            idx, x, y, cx, cy = idx[keep], x[keep], y[keep], cx[keep], cy[keep]
            if not idx.size:
                break
    return counts.reshape(height, width)


def green(c, z_in, max_iter, degree, bailout):
    z = np.array(z_in, dtype=np.complex128).ravel()
    x, y = z.real.copy(), z.imag.copy()
    cx, cy, b2 = complex(c).real, complex(c).imag, bailout * bailout
    out = np.zeros(z.shape, dtype=np.float64)
    idx = np.arange(z.size)
    scale = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_iter):
            r2 = x * x + y * y
            done = r2 > b2
            if done.any():
                out[idx[done]] = 0.5 * np.log(r2[done]) / scale
                keep = ~done
                idx, x, y = idx[keep], x[keep], y[keep]
                if not idx.size:
                    break
            if degree == 2:
                x2, y2 = x * x, y * y
                y = 2.0 * x * y + cy
                x = x2 - y2 + cx
            else:
                px, py = x, y
                for _ in range(degree - 1):
                    px, py = px * x - py * y, px * y + py * x
                x, y = px + cx, py + cy
            scale *= degree
    return out.reshape(np.shape(z_in))
