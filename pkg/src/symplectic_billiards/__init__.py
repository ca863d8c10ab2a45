"""Symplectic billiards on pairs of planar polygons, exactly.

The map sends (x, y) to (y, z) where the chord xz is parallel to the edge
containing y and interior to x's polygon. The polygonal kernel runs on
arbitrary-precision rationals; the smooth-curve module is numerical.
"""

from .engine import BranchAtlas, PhasePair, StepOutcome, iterate, scan_orbit, step, step_back
from .geom import Poly, make_polygon, orientation, point_location
from .rational import Rat, parse_rat, rat, rat_str
from .strata import critical_set, filled_set
from .table import EdgePoint, EdgeRef, TablePair, builtin, table_from_json, table_to_json, validate_table
from .tiles import Classification, Tile, classify, decompose, tile_of

__all__ = [
    "BranchAtlas", "Classification", "EdgePoint", "EdgeRef", "PhasePair",
    "Poly", "Rat", "StepOutcome", "TablePair", "Tile", "builtin", "classify",
    "critical_set", "decompose", "filled_set", "iterate", "make_polygon",
    "orientation", "parse_rat", "point_location", "rat", "rat_str",
    "scan_orbit", "step", "step_back", "table_from_json", "table_to_json",
    "tile_of", "validate_table",
]

__version__ = "0.1.0"
