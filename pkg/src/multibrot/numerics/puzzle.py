"""Diameters of nested puzzle pieces around a target point.

The depth-k piece of z is the connected component, containing z, of the set
of points w with p^j(w) in the same depth-0 cell as p^j(z) for all j <= k.
Pieces are rasterised on a grid laid over the previous piece, so each depth
is resolved at the same relative resolution.  On that grid the depth k-1 and
depth k pieces are both measured; since one contains the other, their ratio is
at most one, and the reported diameters chain these ratios from the directly
measured depth-0 diameter.  The per-grid measurements are kept as ``raw``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import shapely
from scipy import ndimage

from .config import DEFAULT, NumericsConfig
from .regions import PiecePartition, pair_partition


@dataclass(frozen=True)
class PuzzleReport:
    diameters: list[float]
    truncated: bool
    raw: list[float]
    #: bounding boxes (xmin, ymin, xmax, ymax) of the measured pieces
    boxes: list[tuple[float, float, float, float]]

    def to_json(self) -> dict:
        return {"diameters": self.diameters, "truncated": self.truncated,
                "raw": self.raw}


def _diameter(xs: np.ndarray, ys: np.ndarray) -> float:
    hull = shapely.MultiPoint(np.column_stack([xs, ys])).convex_hull
    pts = np.asarray(hull.exterior.coords if hull.geom_type == "Polygon" else hull.coords)
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1)).max())


def _orbit_signatures(part: PiecePartition, z: np.ndarray, depth: int) -> list[np.ndarray]:
    sigs = []
    d = part.cfg.degree
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(depth + 1):
            sigs.append(part.signature(z))
            z = z ** d + part.c
    return sigs


def piece_masks(part: PiecePartition, target: complex, depth: int, box, n: int):
    """Rasters of the depth-(depth-1) and depth-``depth`` pieces of ``target``.

    The grid covers ``box`` with the target exactly on a grid node.  Returns
    (outer, inner, xs, ys); a mask is None when the target's node is not in it.
    """
    xmin, ymin, xmax, ymax = box
    h = max(xmax - xmin, ymax - ymin) / n
    i_lo = int(np.floor((xmin - target.real) / h))
    j_lo = int(np.floor((ymin - target.imag) / h))
    xs = target.real + h * np.arange(i_lo - 1, i_lo + n + 2)
    ys = target.imag + h * np.arange(j_lo - 1, j_lo + n + 2)
    grid = xs[None, :] + 1j * ys[:, None]
    want = _orbit_signatures(part, np.array([target]), depth)
    have = _orbit_signatures(part, grid.ravel(), depth)
    i0, j0 = -(i_lo - 1), -(j_lo - 1)
    ok = np.ones(grid.size, dtype=bool)
    masks = []
    for k, (w, s) in enumerate(zip(want, have)):
        ok &= s == w[0]
        if k >= depth - 1:
            labels, _ = ndimage.label(ok.reshape(grid.shape))
            lab = labels[j0, i0]
            masks.append(labels == lab if lab else None)
    if depth == 0:
        masks.insert(0, None)
    return masks[0], masks[1], xs, ys


def _touches_edge(mask: np.ndarray) -> bool:
    return bool(mask[0, :].any() or mask[-1, :].any() or mask[:, 0].any() or mask[:, -1].any())


def _measure(mask, xs, ys):
    jj, ii = np.nonzero(mask)
    return _diameter(xs[ii], ys[jj]), xs[ii], ys[jj]


def puzzle_diameters(c: complex, pairs, target: complex, depth: int,
                     cfg: NumericsConfig = DEFAULT, resolution: int = 160,
                     cap_potential: float | None = None,
                     partition: PiecePartition | None = None) -> PuzzleReport:
    """Euclidean diameters of the puzzle pieces containing ``target``, depth 0..depth."""
    part = partition or pair_partition(c, pairs, cfg, cap_potential)
    target = complex(target)
    r = 2.0 + abs(part.c)
    box = (-r, -r, r, r)
    diameters, raw, boxes = [], [], []
    for k in range(depth + 1):
        outer, inner, xs, ys = piece_masks(part, target, k, box, resolution)
        if inner is None or inner.sum() < 4 or _touches_edge(inner):
            return PuzzleReport(diameters, True, raw, boxes)
        d_in, px, py = _measure(inner, xs, ys)
        if k == 0:
            diameters.append(d_in)
        else:
            if outer is None:
                return PuzzleReport(diameters, True, raw, boxes)
            d_out = _measure(outer, xs, ys)[0]
            diameters.append(diameters[-1] * d_in / d_out)
        raw.append(d_in)
        h = xs[1] - xs[0]
        box = (px.min() - h, py.min() - h, px.max() + h, py.max() + h)
        boxes.append(box)
    return PuzzleReport(diameters, False, raw, boxes)
