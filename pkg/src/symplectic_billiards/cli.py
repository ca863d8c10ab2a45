"""Command line surface: iterate, classify, strata, tiles, kite, necktie,
smooth, serve. Exit codes: 0 success, 2 input error, 3 inconclusive."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import casebook, reports, smooth, strata, tiles
from .engine import BranchAtlas, PhasePair, iterate
from .rational import parse_rat
from .render import (
    render_phase_decomposition,
    render_smooth_orbit,
    render_table_with_orbit,
)
from .table import (
    PLUS,
    EdgePoint,
    TableError,
    TablePair,
    builtin,
    parse_edge_point,
    table_from_json,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


class InputError(ValueError):
    pass


def load_table(spec: str) -> TablePair:
    if spec.startswith("builtin:"):
        name = spec[len("builtin:"):].replace(":", " ")
        return builtin(name)
    path = Path(spec)
    if not path.exists():
        raise InputError(f"no such table file: {spec}")
    return table_from_json(json.loads(path.read_text()))


def parse_seed(T: TablePair, text: str) -> PhasePair:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("seed must be '<table:edge:t>,<table:edge:t>'")
    x = parse_edge_point(T, parts[0])
    y = parse_edge_point(T, parts[1])
    if x.table == y.table:
        if not T.single_table:
            raise InputError("seed points must lie on opposite tables")
        y = EdgePoint(1 - x.table, y.edge, y.t)  # same polygon, alternate tag
    return PhasePair(x, y)


def _emit(data: dict, args) -> None:
    print(json.dumps(data, indent=None if args.compact else 2, sort_keys=True))


def cmd_iterate(args) -> int:
    T = load_table(args.table)
    seed = parse_seed(T, args.seed)
    traj, sym = iterate(T, seed, args.steps)
    _emit(reports.trajectory_report(T, traj, sym), args)
    if args.svg:
        Path(args.svg).write_text(render_table_with_orbit(T, traj.points))
    return EXIT_OK


def cmd_classify(args) -> int:
    T = load_table(args.table)
    c = tiles.classify(T, f_max_points=args.budget_f, c_budget=args.budget_c,
                       samples=args.samples, sample_steps=args.sample_steps)
    _emit(reports.classification_report(T, c), args)
    return EXIT_INCONCLUSIVE if c.label == "Inconclusive" else EXIT_OK


def cmd_strata(args) -> int:
    if args.svg and args.what != "cgrid":
        raise InputError("--svg is supported for --what cgrid only")
    T = load_table(args.table)
    atlas = BranchAtlas(T)
    if args.what == "f":
        F = strata.filled_set(T, args.budget_f, args.rounds)
        _emit(reports.filled_set_report(T, F), args)
    elif args.what == "c":
        C = strata.critical_set(T, args.budget_c, atlas)
        _emit(reports.critical_set_report(T, C), args)
    elif args.what == "cgrid":
        C = strata.critical_set(T, args.budget_c, atlas)
        grid = strata.c_grid(C)
        _emit(reports.grid_report_json(T, grid), args)
        if args.svg:
            Path(args.svg).write_text(render_phase_decomposition(T, grid=grid))
    elif args.what == "n":
        layers = strata.discontinuity_depth(T, args.depth, atlas=atlas)
        _emit(reports.segments_report(layers), args)
    else:
        raise InputError(f"unknown strata kind {args.what!r}")
    return EXIT_OK


def cmd_tiles(args) -> int:
    T = load_table(args.table)
    atlas = BranchAtlas(T)
    C = strata.critical_set(T, args.budget_c, atlas)
    decomposition = tiles.decompose(T, C, atlas)
    _emit(reports.tiles_report(T, decomposition), args)
    if args.svg:
        grid = strata.c_grid(C)
        Path(args.svg).write_text(
            render_phase_decomposition(T, tiles=decomposition, grid=grid))
    return EXIT_OK


def cmd_kite(args) -> int:
    K = casebook.kite_orbit6(parse_rat(args.X), parse_rat(args.Y))
    isolation = casebook.kite_isolation_check(K) if args.isolation else None
    _emit(reports.kite_report(K, isolation), args)
    if args.svg:
        Path(args.svg).write_text(render_table_with_orbit(K.table, K.orbit))
    return EXIT_OK


def cmd_necktie(args) -> int:
    if args.return_map is not None:
        if not args.return_map.startswith("t="):
            raise InputError("--return-map takes t=p/q")
        t = parse_rat(args.return_map[2:])
        x = EdgePoint(PLUS, 0, parse_rat(args.x_param))
        t_out, steps = casebook.necktie_return_map(x, t)
        _emit({"schema": reports.SCHEMA, "kind": "necktie_return",
               "t_in": args.return_map[2:], "t_out": f"{t_out.numerator}/{t_out.denominator}",
               "steps": steps}, args)
        return EXIT_OK
    rep = casebook.necktie_no_period_scan(args.scan, args.max_steps)
    _emit({"schema": reports.SCHEMA, "kind": "necktie_scan",
           "seeds": rep.seeds, "max_steps": rep.max_steps,
           "periodic_found": rep.periodic_found,
           "reached_section": rep.reached_section,
           "vnk_agreements": rep.vnk_agreements, "vnk_checked": rep.vnk_checked,
           "staircase_turnarounds": rep.staircase_turnarounds,
           "vertex_stops": rep.vertex_stops}, args)
    return EXIT_OK


def _curve_from_json(obj) -> object:
    kind = obj.get("kind")
    if kind == "ellipse":
        return smooth.Ellipse(center=tuple(obj.get("center", (0, 0))),
                              a=obj.get("a", 1.0), b=obj.get("b", 1.0),
                              rotation=obj.get("rotation", 0.0))
    if kind == "radial_fourier":
        return smooth.RadialFourier(c0=obj["c0"],
                                    cos_coeffs=tuple(obj.get("cos", ())),
                                    sin_coeffs=tuple(obj.get("sin", ())),
                                    center=tuple(obj.get("center", (0, 0))))
    raise InputError(f"unknown curve kind {kind!r}")


def cmd_smooth(args) -> int:
    spec = json.loads(Path(args.curves).read_text())
    pair = smooth.CurvePair(_curve_from_json(spec["minus"]),
                            _curve_from_json(spec["plus"]))
    orbit = smooth.find_periodic(pair, args.k, restarts=args.restarts,
                                 seed=args.seed)
    _emit(reports.smooth_orbit_report(orbit), args)
    if args.svg:
        Path(args.svg).write_text(render_smooth_orbit(pair, orbit))
    return EXIT_OK


def cmd_serve(args) -> int:
    from .server import serve

    serve(args.port, args.host, static_dir=args.static)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sympbill",
        description="Exact symplectic billiards on polygon pairs",
    )
    subparsers = p.add_subparsers(dest="command", required=True)

    def sub_parser(name: str, **kw):
        s = subparsers.add_parser(name, **kw)
        s.add_argument("--compact", action="store_true",
                       help="single-line JSON output")
        return s

    s = sub_parser("iterate", help="iterate an orbit from a seed pair")
    s.add_argument("table")
    s.add_argument("--seed", required=True, help="e.g. 'minus:0:1/4,plus:1:1/2'")
    s.add_argument("--steps", type=int, default=10000)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_iterate)

    s = sub_parser("classify", help="periodicity classification")
    s.add_argument("table")
    s.add_argument("--budget-f", type=int, default=2000)
    s.add_argument("--budget-c", type=int, default=4000)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--sample-steps", type=int, default=20000)
    s.set_defaults(func=cmd_classify)

    s = sub_parser("strata", help="F / C / C-grid / truncated N")
    s.add_argument("table")
    s.add_argument("--what", choices=("f", "c", "cgrid", "n"), required=True)
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--budget-f", dest="budget_f", type=int, default=2000)
    s.add_argument("--budget-c", dest="budget_c", type=int, default=4000)
    s.add_argument("--rounds", type=int, default=40)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_strata)

    s = sub_parser("tiles", help="phase-space tile decomposition")
    s.add_argument("table")
    s.add_argument("--budget-c", dest="budget_c", type=int, default=4000)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_tiles)

    s = sub_parser("kite", help="crooked-kite isolated 6-orbit")
    s.add_argument("--X", required=True)
    s.add_argument("--Y", required=True)
    s.add_argument("--isolation", action="store_true")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_kite)

    s = sub_parser("necktie", help="necktie scans and return map")
    s.add_argument("--scan", type=int, default=100)
    s.add_argument("--max-steps", type=int, default=10000)
    s.add_argument("--return-map", help="t=p/q")
    s.add_argument("--x-param", default="1/3",
                   help="position of the section point x on the kite top edge")
    s.set_defaults(func=cmd_necktie)

    s = sub_parser("smooth", help="variational 2k-periodic orbit search")
    s.add_argument("--curves", required=True, help="curve pair JSON file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--restarts", type=int, default=32)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_smooth)

    s = sub_parser("serve", help="explorer protocol server")
    s.add_argument("--port", type=int, default=8642)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--static", default=None,
                   help="directory of explorer assets to serve at /")
    s.set_defaults(func=cmd_serve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, TableError, casebook.DegenerateAtBoundary,
            casebook.DyadicInput, casebook.DyadicSeed,
            json.JSONDecodeError, ValueError) as e:
        print(json.dumps({"error": str(e), "type": type(e).__name__}),
              file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
