"""Deterministic SVG figures: labeled ideal points, coalition outcome regions, witnesses.

Output is plain SVG 1.1 text built by string formatting with fixed
precision, so identical specs give identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import RenderError
from .geometry import CoalitionMask, Line2

PALETTE = {
    "liberal-blue": "#1f77b4",
    "conservative-red": "#d62728",
    "tioli-green": "#2ca02c",
}
MARGIN = 60.0
LABEL_DX = 7.0
LABEL_DY = -5.0


@dataclass(frozen=True)
class DotsLayer:
    points: np.ndarray
    role: str = "tioli-green"
    radius: float = 1.6

    def __post_init__(self):
        if self.role not in PALETTE:
            raise RenderError(f"unknown color role {self.role!r}; use one of {sorted(PALETTE)}")


@dataclass(frozen=True)
class LineLayer:
    line: Line2


@dataclass(frozen=True)
class CircleLayer:
    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class PlotSpec:
    config: object
    highlight: CoalitionMask | None = None
    layers: Sequence = ()
    viewport: tuple | None = None
    width: int = 800
    height: int = 800
    title: str = ""

    def resolved_viewport(self) -> tuple[float, float, float, float]:
        if self.viewport is not None:
            return tuple(float(v) for v in self.viewport)
        return default_viewport(self.config, self.layers)


def default_viewport(config, layers=()) -> tuple[float, float, float, float]:
    pts = _plane_points(config)
    for layer in layers:
        if isinstance(layer, DotsLayer) and len(layer.points):
            pts = np.vstack([pts, np.asarray(layer.points, dtype=float)])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = max(float((hi - lo).max()), 1e-9)
    pad = 0.08 * span
    return (float(lo[0] - pad), float(lo[1] - pad), float(hi[0] + pad), float(hi[1] + pad))


def _plane_points(config) -> np.ndarray:
    pts = np.asarray(config.points, dtype=float)
    if pts.shape[1] == 1:
        return np.column_stack([pts[:, 0], np.zeros(len(pts))])
    return pts


@dataclass(frozen=True)
class Transform:
    """Uniform-scale affine map from data coordinates to pixels (y up to y down)."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float
    width: float
    height: float
    one_d: bool = False
    scale: float = field(init=False)
    x0: float = field(init=False)
    y0: float = field(init=False)

    def __post_init__(self):
        if self.one_d:
            s = (self.width - 2 * MARGIN) / (self.xmax - self.xmin)
        else:
            s = min(
                (self.width - 2 * MARGIN) / (self.xmax - self.xmin),
                (self.height - 2 * MARGIN) / (self.ymax - self.ymin),
            )
        object.__setattr__(self, "scale", s)
        cx, cy = 0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax)
        object.__setattr__(self, "x0", 0.5 * self.width - s * cx)
        object.__setattr__(self, "y0", 0.5 * self.height + s * cy)

    def to_pixel(self, x, y):
        return self.x0 + self.scale * x, self.y0 - self.scale * y

    def from_pixel(self, px, py):
        return (px - self.x0) / self.scale, (self.y0 - py) / self.scale


def transform_for(spec: PlotSpec) -> Transform:
    xmin, ymin, xmax, ymax = spec.resolved_viewport()
    one_d = spec.config.points.shape[1] == 1
    if one_d:
        ymin, ymax = -1.0, 1.0
    if not (xmax > xmin and ymax > ymin):
        raise RenderError(f"degenerate viewport {(xmin, ymin, xmax, ymax)}")
    return Transform(xmin, ymin, xmax, ymax, spec.width, spec.height, one_d)


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _clip_line(line: Line2, box):
    """Segment of ``line`` inside the box, or ``None``."""
    a, b, c = line.real_coefficients()
    xmin, ymin, xmax, ymax = box
    hits = []
    if abs(b) > 1e-15:
        for x in (xmin, xmax):
            y = (c - a * x) / b
            if ymin <= y <= ymax:
                hits.append((x, y))
    if abs(a) > 1e-15:
        for y in (ymin, ymax):
            x = (c - b * y) / a
            if xmin <= x <= xmax:
                hits.append((x, y))
    if len(hits) < 2:
        return None
    hits.sort()
    return hits[0], hits[-1]


def render_svg(spec: PlotSpec) -> str:
    config = spec.config
    if config is None or len(config.points) == 0:
        raise RenderError("nothing to render: empty configuration")
    pts = _plane_points(config)
    box = spec.resolved_viewport()
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    if config.points.shape[1] == 2 and not (
        box[0] <= lo[0] and box[1] <= lo[1] and hi[0] <= box[2] and hi[1] <= box[3]
    ):
        raise RenderError("viewport does not contain every ideal point")
    tf = transform_for(spec)
    one_d = tf.one_d
    highlight = spec.highlight

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#ffffff"/>',
    ]
    if spec.title:
        out.append(
            f'<text x="{_f(spec.width / 2)}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{escape(spec.title)}</text>'
        )

    if one_d:
        (x1, y1), (x2, _) = tf.to_pixel(box[0], 0.0), tf.to_pixel(box[2], 0.0)
        out.append(
            f'<line class="axis" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y1)}" '
            'stroke="#000000" stroke-width="1"/>'
        )
    else:
        x1, y1 = tf.to_pixel(box[0], box[3])
        x2, y2 = tf.to_pixel(box[2], box[1])
        out.append(
            f'<rect class="frame" x="{_f(x1)}" y="{_f(y1)}" width="{_f(x2 - x1)}" '
            f'height="{_f(y2 - y1)}" fill="none" stroke="#000000" stroke-width="1"/>'
        )

    for layer in spec.layers:
        if isinstance(layer, DotsLayer):
            color = PALETTE[layer.role]
            out.append(f'<g class="dots" data-role="{layer.role}" fill="{color}">')
            for x, y in np.asarray(layer.points, dtype=float):
                px, py = tf.to_pixel(x, y)
                out.append(f'<circle cx="{_f(px)}" cy="{_f(py)}" r="{_f(layer.radius)}"/>')
            out.append("</g>")
        elif isinstance(layer, LineLayer):
            seg = _clip_line(layer.line, box)
            if seg is not None:
                (ax, ay), (bx, by) = (tf.to_pixel(*p) for p in seg)
                out.append(
                    f'<line class="witness" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" '
                    f'y2="{_f(by)}" stroke="#555555" stroke-width="1.5" stroke-dasharray="6,4"/>'
                )
        elif isinstance(layer, CircleLayer):
            cx, cy = tf.to_pixel(*layer.center)
            out.append(
                f'<circle class="sphere" cx="{_f(cx)}" cy="{_f(cy)}" '
                f'r="{_f(layer.radius * tf.scale)}" fill="none" stroke="#555555" stroke-width="1.5"/>'
            )
        else:
            raise RenderError(f"unknown layer type {type(layer).__name__}")

    for i, (label, (x, y)) in enumerate(zip(config.labels, pts)):
        px, py = tf.to_pixel(x, y)
        out.append(
            f'<circle class="voter" cx="{_f(px)}" cy="{_f(py)}" r="4" fill="#000000"/>'
        )
        bold = ' font-weight="bold"' if highlight is not None and i in highlight else ""
        if one_d:
            lx, ly = px + 2.0, py - 10.0
            out.append(
                f'<text class="label" x="{_f(lx)}" y="{_f(ly)}" font-family="sans-serif" '
                f'font-size="13"{bold} transform="rotate(-45 {_f(lx)} {_f(ly)})">'
                f"{escape(label)}</text>"
            )
        else:
            out.append(
                f'<text class="label" x="{_f(px + LABEL_DX)}" y="{_f(py + LABEL_DY)}" '
                f'font-family="sans-serif" font-size="13"{bold}>{escape(label)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def ideal_point_figure(config, highlight: CoalitionMask | None = None, **kw) -> PlotSpec:
    """Scatter of ideal points with a coalition in bold (1D axis or 2D plane)."""
    return PlotSpec(config, highlight, **kw)


def soi_figure(config, highlight, mask_sample, complement_sample, mask_role="conservative-red", **kw):
    """Two outcome-location dot clouds, one per side of the split."""
    other = "liberal-blue" if mask_role == "conservative-red" else "conservative-red"
    layers = [
        DotsLayer(mask_sample.points, mask_role),
        DotsLayer(complement_sample.points, other),
    ]
    return PlotSpec(config, highlight, layers, **kw)


def tioli_figure(config, highlight, sample, **kw) -> PlotSpec:
    return PlotSpec(config, highlight, [DotsLayer(sample.points, "tioli-green")], **kw)
