"""Static SVG figures of geodesic traces in CB(R) and CB(R^2).

Each snapshot becomes its own ``<g>`` layer labelled with its parameter.
Intervals are drawn as stacked horizontal bars, polygons as overlaid
outlines, and degenerate bodies as small marks.  Coordinates are printed
with a fixed number of decimals so the bytes depend only on the input.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .sets import Interval, Polygon, Subtree

WIDTH, HEIGHT, MARGIN = 480, 360, 24
BAR = 10.0
MARK = 3.0


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _shade(i: int, n: int) -> str:
    # dark blue at t = 0 fading to orange at t = 1
    u = i / max(n - 1, 1)
    a, b = np.array([31, 71, 136]), np.array([230, 126, 34])
    r, g, bl = np.rint((1 - u) * a + u * b).astype(int)
    return f"#{r:02x}{g:02x}{bl:02x}"


def _interval_layers(trace: list[Interval]) -> list[tuple[int, str]]:
    lo = min(I.lo for I in trace)
    hi = max(I.hi for I in trace)
    span = hi - lo or 1.0
    sx = (WIDTH - 2 * MARGIN) / span
    step = min(2.0 * BAR, (HEIGHT - 2 * MARGIN) / len(trace))
    out = []
    for i, I in enumerate(trace):
        x0 = MARGIN + (I.lo - lo) * sx
        y = MARGIN + i * step
        col = _shade(i, len(trace))
        if I.hi == I.lo:
            shape = f'<circle cx="{_fmt(x0)}" cy="{_fmt(y + BAR / 2)}" r="{_fmt(MARK)}" fill="{col}"/>'
        else:
            shape = (f'<rect x="{_fmt(x0)}" y="{_fmt(y)}" width="{_fmt((I.hi - I.lo) * sx)}" '
                     f'height="{_fmt(BAR)}" fill="{col}"/>')
        out.append((i, shape))
    return out


def _polygon_layers(trace: list[Polygon]) -> list[tuple[int, str]]:
    allv = np.vstack([P.array for P in trace])
    lo, hi = allv.min(axis=0), allv.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    scale = float(min((WIDTH - 2 * MARGIN) / span[0], (HEIGHT - 2 * MARGIN) / span[1]))

    def xy(v):
        # y axis points up in the figure
        return MARGIN + (v[0] - lo[0]) * scale, HEIGHT - MARGIN - (v[1] - lo[1]) * scale

    out = []
    for i, P in enumerate(trace):
        col = _shade(i, len(trace))
        pts = [xy(v) for v in P.array]
        if len(pts) == 1:
            shape = f'<circle cx="{_fmt(pts[0][0])}" cy="{_fmt(pts[0][1])}" r="{_fmt(MARK)}" fill="{col}"/>'
        else:
            tag = "polyline" if len(pts) == 2 else "polygon"
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            shape = f'<{tag} points="{coords}" fill="none" stroke="{col}" stroke-width="1.5"/>'
        out.append((i, shape))
    return out


def render_svg(trace: list) -> str:
    if len(trace) < 2:
        raise ValueError("a trace needs at least two snapshots")
    if any(isinstance(S, Subtree) for S in trace):
        raise ValueError("subtrees have no canonical planar embedding and are not drawn")
    if all(isinstance(S, Interval) for S in trace):
        shapes = _interval_layers(trace)
    elif all(isinstance(S, Polygon) for S in trace):
        shapes = _polygon_layers(trace)
    else:
        raise ValueError("a trace must consist of intervals only or polygons only")
    k = len(trace) - 1
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
             f'viewBox="0 0 {WIDTH} {HEIGHT}">',
             f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    for i, shape in shapes:
        t = f"{i}/{k}"
        lines.append(f'<g id="snapshot-{i}" data-t="{t}"><title>t = {t}</title>{shape}</g>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(trace: list, path: str | Path) -> Path:
    """Write ``render_svg(trace)`` to ``path``."""
    path = Path(path)
    path.write_text(render_svg(trace))
    return path
