"""Deterministic SVG rendering of point sets and graphs.

Output is a pure function of the input: fixed decimal formatting, points in
index order, undirected edges in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .build import undirected_pairs
from .geometry import Point


@dataclass(frozen=True)
class RenderOptions:
    width: float = 640.0
    margin: float = 24.0
    point_radius: float = 2.5
    point_color: str = "#c0392b"
    edge_color: str = "#7f8c8d"
    edge_width: float = 0.8
    path_color: str = "#2980b9"
    path_width: float = 2.2


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".")


def render_svg(
    points: list[Point],
    edges,
    witness_path: list[int] | None = None,
    options: RenderOptions = RenderOptions(),
) -> str:
    """One marker per point, one line per undirected edge, and an optional
    highlighted witness path (a vertex index sequence)."""
    opts = options
    if points:
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    span_x = x1 - x0 or 1.0
    span_y = y1 - y0 or 1.0
    scale = (opts.width - 2 * opts.margin) / span_x
    height = span_y * scale + 2 * opts.margin

    def sx(x: float) -> float:
        return opts.margin + (x - x0) * scale

    def sy(y: float) -> float:
        return height - (opts.margin + (y - y0) * scale)  # flip: SVG y grows downward

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(opts.width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(opts.width)} {_fmt(height)}">'
    ]
    for t, h in sorted(undirected_pairs(edges)):
        parts.append(
            f'<line x1="{_fmt(sx(points[t].x))}" y1="{_fmt(sy(points[t].y))}" '
            f'x2="{_fmt(sx(points[h].x))}" y2="{_fmt(sy(points[h].y))}" '
            f'stroke="{opts.edge_color}" stroke-width="{_fmt(opts.edge_width)}"/>'
        )
    if witness_path and len(witness_path) >= 2:
        coords = " ".join(
            f"{_fmt(sx(points[i].x))},{_fmt(sy(points[i].y))}" for i in witness_path
        )
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{opts.path_color}" '
            f'stroke-width="{_fmt(opts.path_width)}"/>'
        )
    for p in points:
        parts.append(
            f'<circle cx="{_fmt(sx(p.x))}" cy="{_fmt(sy(p.y))}" '
            f'r="{_fmt(opts.point_radius)}" fill="{opts.point_color}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
