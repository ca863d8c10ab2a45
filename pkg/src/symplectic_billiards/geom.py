"""Exact rational planar primitives: points, polygons, predicates, line casts.

Everything here is computed over arbitrary-precision rationals; there is no
floating point and no epsilon anywhere. Points are plain ``(x, y)`` tuples
of Rat values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .rational import rat

Point = tuple  # (Rat, Rat)


class PolygonError(ValueError):
    """Base class for polygon validation failures."""


class DegenerateEdge(PolygonError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"edge {index} has zero length")


class CollinearTriple(PolygonError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"vertices {index}, {index+1}, {index+2} are collinear")


class SelfIntersecting(PolygonError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"boundary self-intersects (edges/vertices {i} and {j})")


def pt(x, y) -> Point:
    return (rat(x), rat(y))


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Point) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def scale(a: Point, k) -> Point:
    return (a[0] * k, a[1] * k)


def cross(u: Point, v: Point):
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point):
    return u[0] * v[0] + u[1] * v[1]


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): +1 left turn, -1 right, 0 collinear."""
    c = cross(sub(q, p), sub(r, p))
    return (c > 0) - (c < 0)


def parallel(u: Point, v: Point) -> bool:
    return cross(u, v) == 0


# -- point location ----------------------------------------------------------

INTERIOR = "interior"
EXTERIOR = "exterior"
ON_EDGE = "on_edge"
ON_VERTEX = "on_vertex"


@dataclass(frozen=True)
class Location:
    kind: str
    index: Optional[int] = None  # edge or vertex index for boundary kinds


class Poly:
    """An embedded polygon with CCW vertex order.

    Use :func:`make_polygon` to construct with validation; the raw
    constructor trusts its input.
    """

    __slots__ = ("vertices", "n", "_edges")

    def __init__(self, vertices: Sequence[Point]):
        self.vertices = tuple(vertices)
        self.n = len(self.vertices)
        self._edges = tuple(
            sub(self.vertices[(i + 1) % self.n], self.vertices[i])
            for i in range(self.n)
        )

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.n]

    def edge_vec(self, i: int) -> Point:
        return self._edges[i % self.n]

    def point_on_edge(self, i: int, t) -> Point:
        v = self.vertices[i % self.n]
        e = self._edges[i % self.n]
        return (v[0] + t * e[0], v[1] + t * e[1])

    def signed_area2(self):
        s = rat(0)
        for i in range(self.n):
            a, b = self.vertices[i], self.vertices[(i + 1) % self.n]
            s += a[0] * b[1] - b[0] * a[1]
        return s

    def edge_directions(self) -> list:
        """Distinct edge directions up to sign, in first-seen order."""
        seen = []
        for e in self._edges:
            if not any(parallel(e, d) for d in seen):
                seen.append(e)
        return seen

    def __eq__(self, other):
        return isinstance(other, Poly) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Poly({list(self.vertices)!r})"


def make_polygon(points: Iterable, reorient: bool = True) -> Poly:
    """Validate and build a polygon; CW input is reversed to CCW.

    Raises DegenerateEdge, CollinearTriple or SelfIntersecting.
    """
    verts = [pt(p[0], p[1]) for p in points]
    n = len(verts)
    if n < 3:
        raise DegenerateEdge(0)
    for i in range(n):
        if verts[i] == verts[(i + 1) % n]:
            raise DegenerateEdge(i)
    for i in range(n):
        for j in range(i + 1, n):
            if verts[i] == verts[j]:
                raise SelfIntersecting(i, j)
    for i in range(n):
        if orientation(verts[i], verts[(i + 1) % n], verts[(i + 2) % n]) == 0:
            raise CollinearTriple(i)
    # no vertex in the open interior of a non-incident edge
    for k in range(n):
        for i in range(n):
            if i == k or (i + 1) % n == k:
                continue
            if _point_on_open_segment(verts[k], verts[i], verts[(i + 1) % n]):
                raise SelfIntersecting(k, i)
    # no two open edges intersect
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share only endpoints
            c, d = verts[j], verts[(j + 1) % n]
            if _open_segments_intersect(a, b, c, d):
                raise SelfIntersecting(i, j)
    poly = Poly(verts)
    if poly.signed_area2() < 0:
        if not reorient:
            raise PolygonError("polygon is clockwise")
        poly = Poly(list(reversed(verts)))
    return poly


def _point_on_open_segment(p: Point, a: Point, b: Point) -> bool:
    if orientation(a, b, p) != 0:
        return False
    e = sub(b, a)
    t_num = dot(sub(p, a), e)
    return 0 < t_num < dot(e, e)


def _open_segments_intersect(a, b, c, d) -> bool:
    """Open segment ab meets open segment cd."""
    r, s = sub(b, a), sub(d, c)
    denom = cross(r, s)
    ca = sub(c, a)
    if denom != 0:
        t = rat(cross(ca, s)) / denom
        u = rat(cross(ca, r)) / denom
        return 0 < t < 1 and 0 < u < 1
    if cross(ca, r) != 0:
        return False  # parallel, different lines
    rr = dot(r, r)
    t0 = rat(dot(ca, r)) / rr
    t1 = rat(dot(sub(d, a), r)) / rr
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    return lo < 1 and hi > 0


def point_location(P: Poly, p: Point) -> Location:
    """Exact classification of p against P (OnEdge excludes endpoints)."""
    for i, v in enumerate(P.vertices):
        if v == p:
            return Location(ON_VERTEX, i)
    for i in range(P.n):
        if _point_on_open_segment(p, P.vertices[i], P.vertices[(i + 1) % P.n]):
            return Location(ON_EDGE, i)
    # ray casting towards +x; boundary cases are excluded above
    inside = False
    px, py = p
    for i in range(P.n):
        ax, ay = P.vertices[i]
        bx, by = P.vertices[(i + 1) % P.n]
        if (ay > py) != (by > py):
            x_int = ax + (py - ay) * (bx - ax) / (by - ay)
            if x_int > px:
                inside = not inside
    return Location(INTERIOR if inside else EXTERIOR)


def open_segment_in_interior(P: Poly, a: Point, b: Point) -> bool:
    """True iff the open segment ab lies entirely in int(P).

    The open segment must not meet the boundary at all, so it suffices
    that it misses every closed edge and that its midpoint is interior.
    """
    if a == b:
        raise ValueError("degenerate segment")
    for i in range(P.n):
        if _open_seg_meets_closed_seg(a, b, P.vertices[i], P.vertices[(i + 1) % P.n]):
            return False
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return point_location(P, mid).kind == INTERIOR


def _open_seg_meets_closed_seg(a, b, c, d) -> bool:
    r, s = sub(b, a), sub(d, c)
    denom = cross(r, s)
    ca = sub(c, a)
    if denom != 0:
        t = rat(cross(ca, s)) / denom
        u = rat(cross(ca, r)) / denom
        return 0 < t < 1 and 0 <= u <= 1
    if cross(ca, r) != 0:
        return False
    rr = dot(r, r)
    t0 = rat(dot(ca, r)) / rr
    t1 = rat(dot(sub(d, a), r)) / rr
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    return lo < 1 and hi > 0


# -- line casting ------------------------------------------------------------


@dataclass(frozen=True)
class LineHit:
    """One intersection of an oriented line with the polygon boundary.

    Point hits carry either a vertex index or (edge index, edge parameter u
    in (0,1)). Collinear overlaps with an edge are interval hits with
    t2 > t and the covered edge recorded.
    """

    t: object  # Rat, signed parameter along the line
    point: Point
    vertex: Optional[int] = None
    edge: Optional[int] = None
    u: Optional[object] = None
    t2: Optional[object] = None

    @property
    def is_interval(self) -> bool:
        return self.t2 is not None

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None


def line_polygon_hits(P: Poly, origin: Point, direction: Point) -> list:
    """All exact hits of the line origin + R*direction with P's boundary.

    Sorted by line parameter. Vertex hits are reported once (u=0 on the
    outgoing edge); edges collinear with the line become interval hits.
    """
    if direction == (0, 0):
        raise ValueError("zero direction")
    hits = []
    for i in range(P.n):
        v = P.vertices[i]
        e = P.edge_vec(i)
        denom = cross(direction, e)
        ov = sub(v, origin)
        if denom == 0:
            if cross(ov, direction) != 0:
                continue  # parallel, off the line
            t_a = _line_param(origin, direction, v)
            t_b = _line_param(origin, direction, P.vertex(i + 1))
            lo, hi = (t_a, t_b) if t_a <= t_b else (t_b, t_a)
            hits.append(LineHit(t=lo, t2=hi, point=_line_point(origin, direction, lo), edge=i))
            continue
        u = rat(cross(ov, direction)) / denom
        if u < 0 or u >= 1:
            continue  # u == 1 is the next edge's u == 0
        t = rat(cross(ov, e)) / denom
        p = _line_point(origin, direction, t)
        if u == 0:
            hits.append(LineHit(t=t, point=p, vertex=i))
        else:
            hits.append(LineHit(t=t, point=p, edge=i, u=u))
    hits.sort(key=lambda h: h.t)
    return hits


def _line_param(origin: Point, direction: Point, p: Point):
    d = sub(p, origin)
    if direction[0] != 0:
        return rat(d[0]) / direction[0]
    return rat(d[1]) / direction[1]


def _line_point(origin: Point, direction: Point, t) -> Point:
    return (origin[0] + t * direction[0], origin[1] + t * direction[1])


def first_boundary_hit(P: Poly, origin: Point, direction: Point):
    """The nearest boundary hit with parameter t > 0, or None.

    An interval hit starting at t <= 0 (the line leaves the origin along a
    collinear edge) is returned as-is so callers can reject the chord.
    """
    best = None
    for h in line_polygon_hits(P, origin, direction):
        t_end = h.t2 if h.is_interval else h.t
        if t_end <= 0:
            continue
        if best is None or h.t < best.t:
            best = h
    return best
