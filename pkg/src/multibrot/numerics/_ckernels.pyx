# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay behaviourally identical to _pykernels."""
import numpy as np

from libc.math cimport isfinite, log

cdef extern from "complex.h" nogil:
    double cabs(double complex)


cdef inline double complex cpow_int(double complex z, int d) nogil:
    cdef double complex r = 1
    cdef int i
    for i in range(d):
        r = r * z
    return r


def newton_ray_point(double complex seed, double complex target, double complex c,
                     int n_iter, bint parameter, int degree, int max_steps, double tol):
    """Solve p^n(w) = target for w (dynamic) or c (parameter, orbit starts at c).

    Returns (w, steps, converged).
    """
    cdef double complex w = seed, z, dz, zd1, step
    cdef int k, it
    cdef bint ok = False
    with nogil:
        for it in range(max_steps):
            if parameter:
                z = w
                dz = 1
                for k in range(n_iter):
                    zd1 = cpow_int(z, degree - 1)
                    dz = degree * zd1 * dz + 1
                    z = zd1 * z + w
            else:
                z = w
                dz = 1
                for k in range(n_iter):
                    zd1 = cpow_int(z, degree - 1)
                    dz = degree * zd1 * dz
                    z = zd1 * z + c
            if dz == 0:
                break
            step = (z - target) / dz
            if not (isfinite(step.real) and isfinite(step.imag)):
                break
            w = w - step
            if cabs(step) <= tol * (1.0 + cabs(w)):
                ok = True
                it += 1
                break
    return complex(w), it, ok


def escape_counts(double x0, double y0, double dx, double dy, int width, int height,
                  int max_iter, int degree, double escape_r2):
    """Escape iteration counts for the grid c = x0 + i*dx + 1j*(y0 - j*dy).

    Interior points get ``max_iter``.
    """
    out = np.empty((height, width), dtype=np.uint32)
    cdef unsigned int[:, :] view = out
    cdef int i, j, n, k
    cdef double cx, cy, x, y, x2, y2, px, py, t
    with nogil:
        for j in range(height):
            cy = y0 - j * dy
            for i in range(width):
                cx = x0 + i * dx
                x = 0.0
                y = 0.0
                n = 0
                while n < max_iter:
                    if degree == 2:
                        x2 = x * x
                        y2 = y * y
                        y = 2.0 * x * y + cy
                        x = x2 - y2 + cx
                    else:
                        px = x
                        py = y
                        for k in range(degree - 1):
                            t = px * x - py * y
                            py = px * y + py * x
                            px = t
                        x = px + cx
                        y = py + cy
                    if x * x + y * y > escape_r2:
                        break
                    n += 1
                view[j, i] = n
    return out


def green(double complex c, z_in, int max_iter, int degree, double bailout):
    """Green's function of K_c at each point; 0 for points that do not escape."""
    zs = np.ascontiguousarray(z_in, dtype=np.complex128).ravel()
    out = np.zeros(zs.shape[0], dtype=np.float64)
    cdef double complex[:] zv = zs
    cdef double[:] ov = out
    cdef Py_ssize_t i
    cdef int n, k
    cdef double x, y, x2, y2, px, py, t, r2, scale
    cdef double cx = c.real, cy = c.imag, b2 = bailout * bailout
    with nogil:
        for i in range(zv.shape[0]):
            x = zv[i].real
            y = zv[i].imag
            scale = 1.0
            for n in range(max_iter):
                r2 = x * x + y * y
                if r2 > b2:
                    ov[i] = 0.5 * log(r2) / scale
                    break
                if degree == 2:
                    x2 = x * x
                    y2 = y * y
                    y = 2.0 * x * y + cy
                    x = x2 - y2 + cx
                else:
                    px = x
                    py = y
                    for k in range(degree - 1):
                        t = px * x - py * y
                        py = px * y + py * x
                        px = t
                    x = px + cx
                    y = py + cy
                scale = scale * degree
    return out.reshape(np.shape(z_in))
