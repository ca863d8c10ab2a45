"""Polygon-pair tables: validation, affine action, builtins, JSON round trip.

Boundary points are addressed as EdgePoint(table, edge, t) with t in [0,1);
t = 0 is the edge's start vertex, so every boundary point has exactly one
encoding and orbit equality checks are plain tuple comparisons.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .geom import Poly, make_polygon
from .rational import parse_rat, rat, rat_str

MINUS = 0
PLUS = 1
SIDE_NAMES = ("minus", "plus")


class TableError(ValueError):
    pass


class SingularMatrix(TableError):
    pass


class SingleTable(TableError):
    pass


class UnknownName(TableError):
    pass


class BadKiteParams(TableError):
    pass


class EdgeRef(NamedTuple):
    table: int  # MINUS or PLUS
    index: int


class EdgePoint(NamedTuple):
    table: int
    edge: int
    t: object  # Rat in [0,1); 0 encodes the edge's start vertex

    @property
    def is_vertex(self) -> bool:
        return self.t == 0

    def ref(self) -> EdgeRef:
        return EdgeRef(self.table, self.edge)


class TablePair:
    """A validated pair (P_minus, P_plus); single_table means both are equal."""

    __slots__ = ("polys", "single_table", "note")

    def __init__(self, p_minus: Poly, p_plus: Optional[Poly], note: Optional[str] = None):
        self.single_table = p_plus is None
        self.polys = (p_minus, p_minus if p_plus is None else p_plus)
        self.note = note

    def poly(self, side: int) -> Poly:
        return self.polys[side]

    def point(self, ep: EdgePoint):
        return self.polys[ep.table].point_on_edge(ep.edge, ep.t)

    def edge_vec(self, ep) -> tuple:
        return self.polys[ep.table].edge_vec(ep.edge if isinstance(ep, (EdgePoint, EdgeRef)) else ep)

    def edge_point(self, table: int, edge: int, t) -> EdgePoint:
        """Build a normalized EdgePoint; t = 1 rolls over to the next edge."""
        t = rat(t)
        n = self.polys[table].n
        if not (0 <= t <= 1):
            raise ValueError(f"edge parameter {t} outside [0, 1]")
        if t == 1:
            return EdgePoint(table, (edge + 1) % n, rat(0))
        return EdgePoint(table, edge % n, t)

    def vertex_point(self, table: int, vertex: int) -> EdgePoint:
        return EdgePoint(table, vertex % self.polys[table].n, rat(0))

    def __eq__(self, other):
        return (
            isinstance(other, TablePair)
            and self.polys == other.polys
            and self.single_table == other.single_table
        )

    def __repr__(self):
        kind = "single" if self.single_table else "pair"
        return f"TablePair({kind}, n={self.polys[0].n},{self.polys[1].n})"


def validate_table(p_minus, p_plus=None, note: Optional[str] = None) -> TablePair:
    """Validate vertex lists (or Poly values) into a TablePair, CCW-oriented."""
    poly_m = p_minus if isinstance(p_minus, Poly) else make_polygon(p_minus)
    if p_plus is None:
        return TablePair(poly_m, None, note)
    poly_p = p_plus if isinstance(p_plus, Poly) else make_polygon(p_plus)
    return TablePair(poly_m, poly_p, note)


def affine_apply(T: TablePair, A, b) -> TablePair:
    """Apply p -> A p + b (A rational 2x2 with det != 0) to both polygons."""
    a00, a01 = rat(A[0][0]), rat(A[0][1])
    a10, a11 = rat(A[1][0]), rat(A[1][1])
    if a00 * a11 - a01 * a10 == 0:
        raise SingularMatrix("affine matrix is singular")
    bx, by = rat(b[0]), rat(b[1])

    def f(p):
        return (a00 * p[0] + a01 * p[1] + bx, a10 * p[0] + a11 * p[1] + by)

    minus = [f(p) for p in T.polys[MINUS].vertices]
    plus = None if T.single_table else [f(p) for p in T.polys[PLUS].vertices]
    return validate_table(minus, plus, T.note)


def translate_one(T: TablePair, which: int, v) -> TablePair:
    """Translate one polygon only; the billiard rule is unchanged by this."""
    if T.single_table:
        raise SingleTable("cannot translate one polygon of a single-table pair")
    vx, vy = rat(v[0]), rat(v[1])
    moved = [(p[0] + vx, p[1] + vy) for p in T.polys[which].vertices]
    if which == MINUS:
        return validate_table(moved, T.polys[PLUS], T.note)
    return validate_table(T.polys[MINUS], moved, T.note)


# -- builtin tables ----------------------------------------------------------

# Rational approximation of the regular pentagram (outer radius 1, inner
# radius (3-sqrt(5))/2), denominators <= 10**6. The exact pentagram has
# irrational vertices, so this table is tagged as approximate.
_PENTAGRAM = [
    ("0/1", "1/1"),
    ("-172539/768500", "219602/710647"),
    ("-178461/187645", "219602/710647"),
    ("-46041/126740", "-109801/930249"),
    ("-494462/841229", "-416020/514229"),
    ("0/1", "-317811/832040"),
    ("494462/841229", "-416020/514229"),
    ("46041/126740", "-109801/930249"),
    ("178461/187645", "219602/710647"),
    ("172539/768500", "219602/710647"),
]


def crooked_kite(x, y) -> TablePair:
    """Single-table kite (0,1),(0,0),(1,0),(X,Y) with X>1, Y>1, |X-Y|<1."""
    x, y = rat(x), rat(y)
    if not (x > 1 and y > 1 and abs(x - y) < 1):
        raise BadKiteParams(f"need X>1, Y>1, |X-Y|<1; got X={rat_str(x)}, Y={rat_str(y)}")
    return validate_table([(0, 1), (0, 0), (1, 0), (x, y)])


def builtin(name: str) -> TablePair:
    """Named tables; 'crooked-kite X Y' takes rational parameters."""
    parts = name.split()
    key = parts[0]
    if key == "quad":
        return validate_table([(0, 1), (0, 0), (1, 0), (3, 4)])
    if key == "square-rhombus":
        return validate_table(
            [(0, 0), (4, 0), (4, 4), (0, 4)],
            [(6, 5), (8, 1), (12, -1), (10, 3)],
        )
    if key == "crooked-kite":
        if len(parts) != 3:
            raise UnknownName("crooked-kite needs two rational parameters: 'crooked-kite X Y'")
        return crooked_kite(parse_rat(parts[1]), parse_rat(parts[2]))
    if key == "necktie":
        return validate_table(
            [(2, 2), (2, 0), (0, 0), (0, 2)],
            [(5, 2), (4, 2), (3, 0), (5, 1)],
        )
    if key == "unit-square":
        return validate_table([(0, 0), (1, 0), (1, 1), (0, 1)])
    if key == "right-triangle":
        return validate_table([(0, 0), (1, 0), (0, 1)])
    if key == "regular-pentagram":
        verts = [(parse_rat(a), parse_rat(b)) for a, b in _PENTAGRAM]
        return validate_table(verts, note="approximate rational pentagram")
    if key == "lattice-three-dirs":
        return validate_table([(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)])
    raise UnknownName(f"unknown builtin table {name!r}")


BUILTIN_NAMES = (
    "quad",
    "square-rhombus",
    "crooked-kite",
    "necktie",
    "unit-square",
    "right-triangle",
    "regular-pentagram",
    "lattice-three-dirs",
)


# -- JSON --------------------------------------------------------------------


def table_to_json(T: TablePair) -> dict:
    def poly_json(P: Poly) -> dict:
        return {"vertices": [[rat_str(v[0]), rat_str(v[1])] for v in P.vertices]}

    return {
        "minus": poly_json(T.polys[MINUS]),
        "plus": None if T.single_table else poly_json(T.polys[PLUS]),
    }


def table_from_json(data: dict) -> TablePair:
    def poly_verts(obj) -> list:
        return [(parse_rat(v[0]), parse_rat(v[1])) for v in obj["vertices"]]

    minus = poly_verts(data["minus"])
    plus = poly_verts(data["plus"]) if data.get("plus") is not None else None
    return validate_table(minus, plus)


def parse_edge_point(T: TablePair, text: str) -> EdgePoint:
    """Parse 'minus:2:3/7' (table, edge index, parameter)."""
    side, edge, t = text.strip().split(":")
    if side not in SIDE_NAMES:
        raise ValueError(f"table must be 'minus' or 'plus', got {side!r}")
    return T.edge_point(SIDE_NAMES.index(side), int(edge), parse_rat(t))


def edge_point_str(ep: EdgePoint) -> str:
    return f"{SIDE_NAMES[ep.table]}:{ep.edge}:{rat_str(ep.t)}"
