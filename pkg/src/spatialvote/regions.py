"""Where an outcome sphere can be centered to capture a given coalition.

Two views of the same set: the exact convex polygon (an order-k Voronoi
cell, clipped to a display box) and the grid-point sample the dot figures
are drawn from.  The polygon is authoritative; the grid is kept as an
independent check and for figures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .coalitions import ModelKind, soi_allowed
from .geometry import (
    CoalitionMask,
    Grid,
    _nearest_k_region,
    as_points,
    grid_coalition_labels,
    grid_scan,
)


@dataclass(frozen=True)
class RegionPolygon:
    """Convex polygon, counterclockwise; empty when the region is empty.

    ``clipped`` is set when part of the boundary comes from the box rather
    than a bisector (the region extends beyond the box).
    """

    mask: CoalitionMask
    vertices: list = field(default_factory=list)
    clipped: bool = False
    box: tuple = ()

    @property
    def empty(self) -> bool:
        return not self.vertices

    def to_dict(self, labels: Sequence[str]) -> dict:
        return {
            "coalition": self.mask.labels(labels),
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
            "clipped": self.clipped,
            "box": list(self.box),
        }


@dataclass(frozen=True)
class RegionSample:
    """Grid points at which the nearest-|mask| voters are exactly ``mask``."""

    mask: CoalitionMask
    points: np.ndarray
    grid: Grid

    def __len__(self):
        return len(self.points)

    def to_dict(self, labels: Sequence[str]) -> dict:
        return {
            "coalition": self.mask.labels(labels),
            "grid": self.grid.to_dict(),
            "points": self.points.tolist(),
        }


def _box_lines(lat, box):
    xmin, ymin, xmax, ymax = (lat.value(v) for v in box)
    return {(1, 0, xmax), (0, 1, ymax), (-1, 0, -xmin), (0, -1, -ymin)}


def region_polygon(points, mask: CoalitionMask, clip_box) -> RegionPolygon:
    """The open region where ``mask`` is exactly the nearest-|mask| set, clipped to ``clip_box``.

    If the region is nonempty but lies entirely outside ``clip_box`` the box
    is enlarged to reach it, so the polygon is empty exactly when the region
    is.
    """
    pts = as_points(points)
    if not mask.is_proper():
        raise ValueError("region polygon needs a proper nonempty mask")
    box = tuple(float(v) for v in clip_box)
    region = _nearest_k_region(pts, mask, box)
    if region.interior is None:
        full = _nearest_k_region(pts, mask)
        if full.interior is None:
            return RegionPolygon(mask, [], False, box)
        wx, wy = (float(full.lattice.real(v)) for v in full.interior)
        pad = max(box[2] - box[0], box[3] - box[1])
        box = (
            min(box[0], wx - pad),
            min(box[1], wy - pad),
            max(box[2], wx + pad),
            max(box[3], wy + pad),
        )
        region = _nearest_k_region(pts, mask, box)
    lat = region.lattice
    edges = _box_lines(lat, box)
    verts = []
    for X, Y, W, _ in region.polygon:
        v = (lat.real(Fraction(X, W)), lat.real(Fraction(Y, W)))
        if not verts or verts[-1] != v:
            verts.append(v)
    if len(verts) > 1 and verts[0] == verts[-1]:
        verts.pop()
    clipped = any(edge in edges for *_, edge in region.polygon)
    return RegionPolygon(mask, verts, clipped, box)


def _strict_sample(scan, mask: CoalitionMask) -> RegionSample:
    k = len(mask)
    labels = grid_coalition_labels(scan, k, strict=True)
    pts = labels.get(mask, np.empty((0, 2)))
    return RegionSample(mask, pts, scan.grid)


def soi_outcome_regions(points, mask: CoalitionMask, grid: Grid):
    """Grid locations for the coalition's outcome and for the complement's outcome.

    Both samples are empty unless the split is SOI-allowed.
    """
    pts = as_points(points)
    empty = np.empty((0, 2))
    comp = mask.complement()
    if not mask.is_proper() or not soi_allowed(pts, mask)[0]:
        return RegionSample(mask, empty, grid), RegionSample(comp, empty, grid)
    scan = grid_scan(pts, grid)
    return _strict_sample(scan, mask), _strict_sample(scan, comp)


def tioli_outcome_region(points, mask: CoalitionMask, grid: Grid) -> RegionSample:
    """Grid locations that can center a sphere containing exactly ``mask``."""
    pts = as_points(points)
    if not mask.is_proper():
        return RegionSample(mask, np.empty((0, 2)), grid)
    return _strict_sample(grid_scan(pts, grid), mask)


def grid_allowed(scan, model: ModelKind | str) -> set[CoalitionMask]:
    """Allowed coalitions as seen by a grid (every size, closed under complement)."""
    model = ModelKind(model)
    n = scan.order.shape[1]
    labeled = set()
    for k in range(1, n):
        labeled.update(grid_coalition_labels(scan, k, strict=True))
    if model is ModelKind.TIOLI:
        return labeled | {m.complement() for m in labeled}
    return {m for m in labeled if m.complement() in labeled}


def refine_until_stable(
    points, model: ModelKind | str, schedule: Sequence[int], inflate: float = 1.0
):
    """Grid-derived allowed sets over a schedule of nested grid resolutions.

    Returns ``(sets, stable)`` where ``stable`` means the last two levels
    agree exactly.  A one-level schedule is never stable.
    """
    schedule = list(schedule)
    if not schedule:
        raise ValueError("empty schedule")
    for lo, hi in zip(schedule, schedule[1:]):
        if not (hi > lo and (hi - 1) % (lo - 1) == 0):
            raise ValueError(f"levels {lo} -> {hi} are not nested grids")
    pts = as_points(points)
    base = Grid.around(pts, schedule[0], inflate)
    sets = []
    for level, res in enumerate(schedule):
        grid = Grid(*base.box, res, level)
        sets.append(grid_allowed(grid_scan(pts, grid), model))
    stable = len(sets) >= 2 and sets[-1] == sets[-2]
    return sets, stable
