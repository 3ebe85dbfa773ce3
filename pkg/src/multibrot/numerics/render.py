"""Escape-time images of the parameter plane, written as binary PGM."""
from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .config import DEFAULT, NumericsConfig

#: grey level used for ray overlays
OVERLAY = 255
INTERIOR = 0


@dataclass(frozen=True)
class Region:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError(f"degenerate region {self}")

    @classmethod
    def parse(cls, text: str) -> "Region":
        xmin, xmax, ymin, ymax = (float(v) for v in text.split(","))
        return cls(xmin, xmax, ymin, ymax)


def pixel_center(region: Region, width: int, height: int, i: int, j: int) -> complex:
    dx = (region.xmax - region.xmin) / width
    dy = (region.ymax - region.ymin) / height
    return complex(region.xmin + (i + 0.5) * dx, region.ymax - (j + 0.5) * dy)


def pixel_of(region: Region, width: int, height: int, z: complex) -> tuple[int, int]:
    i = int((z.real - region.xmin) / (region.xmax - region.xmin) * width)
    j = int((region.ymax - z.imag) / (region.ymax - region.ymin) * height)
    return i, j


def escape_image(region: Region, width: int, height: int, max_iter: int,
                 cfg: NumericsConfig = DEFAULT, bands: int = 16) -> np.ndarray:
    """Iteration counts for each pixel centre, computed in row bands in parallel."""
    if width <= 0 or height <= 0:
        raise ValueError("image dimensions must be positive")
    dx = (region.xmax - region.xmin) / width
    dy = (region.ymax - region.ymin) / height
    x0 = region.xmin + 0.5 * dx
    y0 = region.ymax - 0.5 * dy
    rows = np.array_split(np.arange(height), min(bands, height))

    def band(r):
        return kernels.escape_counts(x0, y0 - r[0] * dy, dx, dy, width, len(r),
                                     max_iter, cfg.degree, 4.0)

    with ThreadPoolExecutor(max_workers=min(8, len(rows))) as pool:
        return np.vstack(list(pool.map(band, rows)))


def shade(counts: np.ndarray, max_iter: int) -> np.ndarray:
    img = 255.0 * (1.0 - np.sqrt(counts / max_iter))
    img = np.clip(np.rint(img), 1, 255).astype(np.uint8)
    img[counts >= max_iter] = INTERIOR
    return img


def draw_polyline(img: np.ndarray, region: Region, points, value: int = OVERLAY) -> None:
    h, w = img.shape
    pts = list(points)
    for a, b in zip(pts, pts[1:]):
        ia, ja = pixel_of(region, w, h, a)
        ib, jb = pixel_of(region, w, h, b)
        steps = max(abs(ib - ia), abs(jb - ja), 1)
        for t in np.linspace(0.0, 1.0, steps + 1):
            i = int(round(ia + t * (ib - ia)))
            j = int(round(ja + t * (jb - ja)))
            if 0 <= i < w and 0 <= j < h:
                img[j, i] = value


def render(region: Region, width: int, height: int, max_iter: int,
           overlays=(), cfg: NumericsConfig = DEFAULT) -> np.ndarray:
    """Greyscale escape-time image; interior pixels are 0.

    ``overlays`` is an iterable of polylines (sequences of complex points)
    drawn over the image, e.g. ``trace.polyline()`` of ray traces.
    """
    img = shade(escape_image(region, width, height, max_iter, cfg), max_iter)
    for line in overlays:
        draw_polyline(img, region, line)
    return img


def write_pgm(path: str | Path, img: np.ndarray) -> None:
    """Binary PGM (P5, maxval 255)."""
    img = np.asarray(img, dtype=np.uint8)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


def read_pgm(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    m = re.match(rb"P5\s+(\d+)\s+(\d+)\s+255\s", data)
    if m is None:
        raise ValueError("not a binary 8-bit PGM")
    w, h = int(m.group(1)), int(m.group(2))
    return np.frombuffer(data[m.end():m.end() + w * h], dtype=np.uint8).reshape(h, w)
