"""Exact combinatorics and numerical dynamics for the Mandelbrot set."""

__version__ = "0.1.0"
