"""Explorer protocol server: JSON requests over HTTP.

POST /api takes one request object per call (the protocol is one JSON
object per line; HTTP framing carries exactly one line). Ops:

  {"op": "set_table", "table": {...}}   or {"op": "set_table", "builtin": name}
  {"op": "step",     "params": {"pair": ["minus:0:1/4", "plus:1:1/2"]}}
  {"op": "orbit",    "params": {"seed": [...], "max_steps": N}}
  {"op": "tiles",    "params": {"budget_c": N}}
  {"op": "cgrid",    "params": {"budget_c": N}}
  {"op": "classify", "params": {"samples": N, ...}}
  {"op": "kite_orbit", "params": {"X": "3/2", "Y": "5/4"}}

Responses are {"ok": true, "result": ...} or {"ok": false, "error": ...};
geometry is exact "p/q" strings plus display floats. GET serves the
explorer's static assets when a directory was provided.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from . import casebook, reports, strata, tiles
from .engine import BranchAtlas, PhasePair, iterate, step
from .rational import parse_rat
from .table import TableError, TablePair, builtin, parse_edge_point, table_from_json


class Session:
    """Single-user explorer session: one current table plus cached atlas."""

    def __init__(self):
        self.lock = threading.Lock()
        self.table: Optional[TablePair] = None
        self.atlas: Optional[BranchAtlas] = None

    def set_table(self, T: TablePair):
        with self.lock:
            self.table = T
            self.atlas = BranchAtlas(T)

    def current(self):
        with self.lock:
            if self.table is None:
                raise ValueError("no table set; send set_table first")
            return self.table, self.atlas


def _parse_pair(T: TablePair, spec) -> PhasePair:
    from .table import EdgePoint

    x = parse_edge_point(T, spec[0])
    y = parse_edge_point(T, spec[1])
    if x.table == y.table:
        if not T.single_table:
            raise ValueError("seed points must lie on opposite tables")
        y = EdgePoint(1 - x.table, y.edge, y.t)
    return PhasePair(x, y)


def handle_request(session: Session, req: dict) -> dict:
    op = req.get("op")
    params = req.get("params", {})
    if op == "set_table":
        if "builtin" in req:
            T = builtin(req["builtin"])
        else:
            T = table_from_json(req["table"])
        session.set_table(T)
        return reports.table_report(T)
    T, atlas = session.current()
    if op == "step":
        pair = _parse_pair(T, params["pair"])
        out = step(T, pair)
        result = {"kind": out.kind}
        if out.pair is not None:
            result["pair"] = [reports.edge_point_json(T, out.pair.x),
                              reports.edge_point_json(T, out.pair.y)]
        return result
    if op == "orbit":
        pair = _parse_pair(T, params["seed"])
        traj, sym = iterate(T, pair, int(params.get("max_steps", 10000)), atlas)
        return reports.trajectory_report(T, traj, sym)
    if op == "tiles":
        C = strata.critical_set(T, int(params.get("budget_c", 4000)), atlas)
        decomposition = tiles.decompose(T, C, atlas)
        return reports.tiles_report(T, decomposition)
    if op == "cgrid":
        C = strata.critical_set(T, int(params.get("budget_c", 4000)), atlas)
        grid = strata.c_grid(C)
        return reports.grid_report_json(T, grid)
    if op == "classify":
        c = tiles.classify(
            T,
            f_max_points=int(params.get("budget_f", 2000)),
            c_budget=int(params.get("budget_c", 4000)),
            samples=int(params.get("samples", 200)),
            sample_steps=int(params.get("sample_steps", 20000)),
            atlas=atlas,
        )
        return reports.classification_report(T, c)
    if op == "kite_orbit":
        K = casebook.kite_orbit6(parse_rat(params["X"]), parse_rat(params["Y"]))
        return reports.kite_report(K)
    raise ValueError(f"unknown op {op!r}")


def make_handler(session: Session, static_dir: Optional[str]):
    static = Path(static_dir) if static_dir else None

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # quiet
            pass

        def _send_json(self, payload: dict, status: int = 200):
            body = json.dumps(payload).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

        def do_POST(self):
            if self.path.rstrip("/") not in ("/api", ""):
                self._send_json({"ok": False, "error": "POST to /api"}, 404)
                return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                req = json.loads(self.rfile.read(length).decode())
                result = handle_request(session, req)
                self._send_json({"ok": True, "result": result})
            except (ValueError, KeyError, TableError, strata.InconclusiveInput,
                    tiles.InfiniteC) as e:
                self._send_json({"ok": False, "error": str(e),
                                 "type": type(e).__name__}, 200)

        def do_GET(self):
            if self.path == "/health":
                self._send_json({"ok": True, "result": "ready"})
                return
            if static is None:
                self._send_json({"ok": False, "error": "no static assets"}, 404)
                return
            rel = self.path.lstrip("/") or "index.html"
            target = (static / rel).resolve()
            if not str(target).startswith(str(static.resolve())) or not target.is_file():
                self.send_response(404)
                self.end_headers()
                return
            body = target.read_bytes()
            ctype = {
                ".html": "text/html", ".js": "text/javascript",
                ".css": "text/css", ".svg": "image/svg+xml",
            }.get(target.suffix, "application/octet-stream")
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


def serve(port: int = 8642, host: str = "127.0.0.1",
          static_dir: Optional[str] = None, ready_event=None):
    session = Session()
    httpd = ThreadingHTTPServer((host, port), make_handler(session, static_dir))
    if ready_event is not None:
        ready_event.set()
    print(f"explorer server on http://{host}:{port}/api", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def start_background(port: int, host: str = "127.0.0.1",
                     static_dir: Optional[str] = None):
    """Spawn the server in a daemon thread; returns (thread, shutdown)."""
    session = Session()
    httpd = ThreadingHTTPServer((host, port), make_handler(session, static_dir))
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return thread, httpd.shutdown
