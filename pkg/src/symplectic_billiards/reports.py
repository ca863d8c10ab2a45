"""JSON report builders shared by the CLI and the explorer server.

Polygonal data is serialized as exact "p/q" strings plus display floats;
smooth data as floats with full precision. All reports carry a schema tag.
"""

from __future__ import annotations

from typing import List

from .engine import SymbolicTrajectory, Trajectory
from .rational import rat_str, to_float
from .strata import CriticalSet, FilledSet, GridReport, PhaseSegment
from .table import SIDE_NAMES, EdgePoint, TablePair, edge_point_str, table_to_json

SCHEMA = "symplectic-billiards/1"


def edge_point_json(T: TablePair, ep: EdgePoint) -> dict:
    x, y = T.point(ep)
    return {
        "at": edge_point_str(ep),
        "point": [rat_str(x), rat_str(y)],
        "display": [to_float(x), to_float(y)],
    }


def trajectory_report(T: TablePair, traj: Trajectory, sym: SymbolicTrajectory) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "trajectory",
        "points": [edge_point_json(T, p) for p in traj.points],
        "symbols": [[SIDE_NAMES[s.table], s.index] for s in sym.symbols],
        "seed_index": traj.seed_index,
        "period": traj.period,
        "forward_stop": None if traj.forward_stop is None else traj.forward_stop.kind,
        "backward_stop": None if traj.backward_stop is None else traj.backward_stop.kind,
        "forward_budget_hit": traj.forward_budget_hit,
        "backward_budget_hit": traj.backward_budget_hit,
    }


def filled_set_report(T: TablePair, F: FilledSet) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "filled_set",
        "status": F.status,
        "rounds": F.rounds,
        "sizes": list(F.sizes),
        "points": {
            SIDE_NAMES[side]: [edge_point_json(T, p) for p in sorted(F.points[side])]
            for side in (0, 1)
        },
    }


def critical_set_report(T: TablePair, C: CriticalSet) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "critical_set",
        "status": C.status,
        "sizes": list(C.sizes),
        "segments_processed": C.segments_processed,
        "active_segments": C.active_segments,
        "witnesses": [
            {
                "vertex": edge_point_json(T, w.vertex),
                "ratio": rat_str(w.ratio),
                "run_length": len(w.distances),
            }
            for w in C.witnesses
        ],
        "points": {
            SIDE_NAMES[side]: [edge_point_json(T, p) for p in sorted(C.points[side])]
            for side in (0, 1)
        },
    }


def grid_report_json(T: TablePair, grid: GridReport) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "c_grid",
        "line_counts": [grid.line_count(0), grid.line_count(1)],
        "vertical": [[edge_point_str(p) for p in grid.vertical[c]] for c in (0, 1)],
        "horizontal": [[edge_point_str(p) for p in grid.horizontal[c]] for c in (0, 1)],
        "witnesses": [
            {"vertex": edge_point_json(T, w.vertex), "ratio": rat_str(w.ratio)}
            for w in grid.witnesses
        ],
    }


def segments_report(layers: List[List[PhaseSegment]]) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "discontinuity_depth",
        "layers": [
            [
                {
                    "x_table": SIDE_NAMES[s.x_table],
                    "x_edge": s.x_edge,
                    "x": [rat_str(s.x_lo), rat_str(s.x_hi)],
                    "y_edge": s.y_edge,
                    "y": [rat_str(s.y_lo), rat_str(s.y_hi)],
                }
                for s in layer
            ]
            for layer in layers
        ],
    }


def tiles_report(T: TablePair, tiles) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "tiles",
        "count": len(tiles),
        "tiles": [
            {
                "x_table": SIDE_NAMES[t.x_table],
                "x_edge": t.x_edge,
                "x": [rat_str(t.x_lo), rat_str(t.x_hi)],
                "y_edge": t.y_edge,
                "y": [rat_str(t.y_lo), rat_str(t.y_hi)],
                "period": t.period,
                "return_order": t.return_order,
                "area": rat_str(t.area(T)),
            }
            for t in tiles
        ],
    }


def classification_report(T: TablePair, c) -> dict:
    out = {
        "schema": SCHEMA,
        "kind": "classification",
        "label": c.label,
        "bound": c.bound,
        "criterion": c.criterion,
        "samples": {
            k: v for k, v in c.sample_stats.items() if k != "periodic_seeds"
        },
    }
    if c.filled is not None:
        out["filled_status"] = c.filled.status
        out["filled_sizes"] = list(c.filled.sizes)
    if c.critical is not None:
        out["critical_status"] = c.critical.status
        out["critical_sizes"] = list(c.critical.sizes)
    if c.certificates:
        cert = {}
        if "witnesses" in c.certificates:
            cert["witnesses"] = [
                {"vertex": edge_point_json(T, w.vertex), "ratio": rat_str(w.ratio)}
                for w in c.certificates["witnesses"]
            ]
        if "isolated_seed" in c.certificates:
            cert["isolated_seed"] = [
                edge_point_str(c.certificates["isolated_seed"].x),
                edge_point_str(c.certificates["isolated_seed"].y),
            ]
            cert["period"] = c.certificates["period"]
        out["certificates"] = cert
    return out


def kite_report(K, isolation=None) -> dict:
    out = {
        "schema": SCHEMA,
        "kind": "kite_orbit",
        "X": rat_str(K.X),
        "Y": rat_str(K.Y),
        "s0": rat_str(K.s0),
        "t0": rat_str(K.t0),
        "orbit": [edge_point_json(K.table, p) for p in K.orbit],
        "contraction_factor": rat_str(K.contraction_factor),
    }
    if isolation is not None:
        out["isolation"] = {
            "contracts": isolation.contracts,
            "tile_area": rat_str(isolation.tile_area),
            "perturbed_checked": isolation.perturbed_checked,
            "perturbed_periodic": isolation.perturbed_periodic,
            "perturbation": rat_str(isolation.perturbation),
            "steps": isolation.steps,
        }
    return out


def smooth_orbit_report(orbit) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "smooth_orbit",
        "k": orbit.k,
        "start_side": SIDE_NAMES[orbit.start_side],
        "params": [float(t) for t in orbit.params],
        "action": float(orbit.action),
        "max_residual": float(orbit.max_residual),
        "min_gap": float(orbit.min_gap),
        "closure_error": float(orbit.closure_error),
        "cover_of": orbit.cover_of,
    }


def table_report(T: TablePair) -> dict:
    out = {
        "schema": SCHEMA,
        "kind": "table",
        "table": table_to_json(T),
        "single_table": T.single_table,
        "display": {
            SIDE_NAMES[side]: [[to_float(v[0]), to_float(v[1])]
                               for v in T.polys[side].vertices]
            for side in (0, 1)
        },
    }
    if T.note:
        out["note"] = T.note
    return out
