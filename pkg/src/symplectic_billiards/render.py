"""Deterministic SVG rendering: tables with orbits, phase decompositions,
C-grids and smooth orbits. Byte-stable output for identical inputs."""

from __future__ import annotations

from typing import List, Optional, Sequence

from .geom import parallel
from .rational import to_float
from .strata import GridReport
from .table import EdgePoint, TablePair

EVEN_COLOR = "#1f77b4"  # even trajectory
ODD_COLOR = "#d62728"  # odd trajectory
GRID_COLOR = "#222222"
TILE_COLOR = "#ffffff"
BAND_COLOR = "#bbbbbb"


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class SvgCanvas:
    def __init__(self, x0, y0, x1, y1, width=720, margin=0.05):
        span = max(x1 - x0, y1 - y0)
        pad = span * margin
        self.x0, self.y0 = x0 - pad, y0 - pad
        self.span = span + 2 * pad
        self.width = width
        self.parts: List[str] = []

    def sx(self, x: float) -> float:
        return (x - self.x0) / self.span * self.width

    def sy(self, y: float) -> float:
        # svg y axis points down
        return self.width - (y - self.y0) / self.span * self.width

    def polyline(self, pts, color, width=1.5, closed=False, fill="none", dash=None):
        coords = " ".join(f"{_fmt(self.sx(x))},{_fmt(self.sy(y))}" for x, y in pts)
        tag = "polygon" if closed else "polyline"
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<{tag} points="{coords}" fill="{fill}" stroke="{color}" '
            f'stroke-width="{_fmt(width)}"{extra}/>')

    def line(self, a, b, color, width=1.0, dash=None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_fmt(self.sx(a[0]))}" y1="{_fmt(self.sy(a[1]))}" '
            f'x2="{_fmt(self.sx(b[0]))}" y2="{_fmt(self.sy(b[1]))}" '
            f'stroke="{color}" stroke-width="{_fmt(width)}"{extra}/>')

    def rect(self, x, y, w, h, fill, stroke="none"):
        self.parts.append(
            f'<rect x="{_fmt(self.sx(x))}" y="{_fmt(self.sy(y + h))}" '
            f'width="{_fmt(w / self.span * self.width)}" '
            f'height="{_fmt(h / self.span * self.width)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="0.6"/>')

    def circle(self, p, r, color):
        self.parts.append(
            f'<circle cx="{_fmt(self.sx(p[0]))}" cy="{_fmt(self.sy(p[1]))}" '
            f'r="{_fmt(r)}" fill="{color}"/>')

    def document(self) -> str:
        body = "\n".join(self.parts)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'width="{self.width}" height="{self.width}" '
                f'viewBox="0 0 {self.width} {self.width}">\n{body}\n</svg>\n')


def _table_bounds(T: TablePair):
    xs = [to_float(v[0]) for P in T.polys for v in P.vertices]
    ys = [to_float(v[1]) for P in T.polys for v in P.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def render_table_with_orbit(T: TablePair, points: Sequence[EdgePoint],
                            width: int = 720) -> str:
    """Both polygons plus the even (blue) and odd (red) trajectory polylines."""
    c = SvgCanvas(*_table_bounds(T), width=width)
    for P in (T.polys if not T.single_table else T.polys[:1]):
        c.polyline([(to_float(v[0]), to_float(v[1])) for v in P.vertices],
                   "#000000", width=2.0, closed=True)
    coords = [tuple(map(to_float, T.point(p))) for p in points]
    for parity, color in ((0, EVEN_COLOR), (1, ODD_COLOR)):
        part = coords[parity::2]
        if len(part) >= 2:
            c.polyline(part, color, width=1.2)
        for p in part:
            c.circle(p, 2.5, color)
    return c.document()


def _phase_panel(c: SvgCanvas, T: TablePair, tx: int, x_off: float,
                 tiles=None, grid: Optional[GridReport] = None):
    nA = T.polys[tx].n
    nB = T.polys[1 - tx].n
    # grey bands for parallel-edge cells
    for i in range(nA):
        for j in range(nB):
            if parallel(T.polys[tx].edge_vec(i), T.polys[1 - tx].edge_vec(j)):
                c.rect(x_off + i, j, 1, 1, BAND_COLOR)
    if tiles is not None:
        for t in tiles:
            if t.x_table != tx:
                continue
            c.rect(x_off + t.x_edge + to_float(t.x_lo), t.y_edge + to_float(t.y_lo),
                   to_float(t.x_hi - t.x_lo), to_float(t.y_hi - t.y_lo),
                   TILE_COLOR, stroke="#888888")
    if grid is not None:
        for ep in grid.vertical[tx]:
            x = x_off + ep.edge + to_float(ep.t)
            c.line((x, 0), (x, nB), GRID_COLOR, width=0.7)
        for ep in grid.horizontal[tx]:
            y = ep.edge + to_float(ep.t)
            c.line((x_off, y), (x_off + nA, y), GRID_COLOR, width=0.7)
    for i in range(nA + 1):
        c.line((x_off + i, 0), (x_off + i, nB), "#000000", width=1.2)
    for j in range(nB + 1):
        c.line((x_off, j), (x_off + nA, j), "#000000", width=1.2)


def render_phase_decomposition(T: TablePair, tiles=None,
                               grid: Optional[GridReport] = None,
                               width: int = 900) -> str:
    """Both phase-space components in edge-parameter coordinates.

    Within a component, the horizontal axis is (x. edge + x.t) and the
    vertical axis (y.edge + y.t); parallel-edge cells are shaded."""
    n0, n1 = T.polys[0].n, T.polys[1].n
    gap = 0.6
    total_w = n0 + n1 + gap
    total_h = max(n1, n0)
    c = SvgCanvas(0, 0, total_w, total_h, width=width)
    _phase_panel(c, T, 0, 0.0, tiles, grid)
    _phase_panel(c, T, 1, n0 + gap, tiles, grid)
    return c.document()


def render_smooth_orbit(pair, orbit, width: int = 720) -> str:
    import numpy as np

    thetas = np.linspace(0.0, 2 * np.pi, 256)
    curves = [pair.curve(0).point(thetas), pair.curve(1).point(thetas)]
    xs = [p[0] for cur in curves for p in cur]
    ys = [p[1] for cur in curves for p in cur]
    c = SvgCanvas(min(xs), min(ys), max(xs), max(ys), width=width)
    for cur in curves:
        c.polyline([(p[0], p[1]) for p in cur], "#000000", width=1.8, closed=True)
    pts = []
    for j, th in enumerate(orbit.params):
        side = (orbit.start_side + j) % 2
        p = pair.curve(side).point(float(th))
        pts.append((float(p[0]), float(p[1])))
    for parity, color in ((0, EVEN_COLOR), (1, ODD_COLOR)):
        part = pts[parity::2] + pts[parity::2][:1]
        c.polyline(part, color, width=1.2)
        for p in part:
            c.circle(p, 3.0, color)
    return c.document()
