"""The symplectic billiard map on a table pair, exact iteration, periods.

The map sends (x, y) to (y, z) where the chord xz is parallel to the edge
containing y and the open segment xz lies in the interior of x's polygon.
All failure modes (vertex hits, parallel edges, no unique chord) are step
outcomes, not exceptions.

Iteration uses a lazily built atlas of exact affine branch maps: for fixed
edges of x and y, z's edge parameter is an affine function of x's parameter
between breakpoints where the chord sweeps through a vertex. A step inside a
branch is two rational multiply-adds, which is what makes 1e8-step scans
affordable; on a breakpoint the generic geometric step resolves the outcome.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

from .geom import cross, first_boundary_hit, open_segment_in_interior, sub
from .rational import rat
from .table import EdgePoint, EdgeRef, TablePair

OK = "ok"
PARALLEL_EDGES = "parallel_edges"
Y_IS_VERTEX = "y_is_vertex"
HITS_VERTEX = "hits_vertex"
NO_UNIQUE_CHORD = "no_unique_chord"
BUDGET = "budget"
PERIODIC = "periodic"


class PhasePair(NamedTuple):
    x: EdgePoint
    y: EdgePoint


@dataclass(frozen=True)
class StepOutcome:
    kind: str
    pair: Optional[PhasePair] = None  # OK and HITS_VERTEX carry the successor
    vertex: Optional[EdgePoint] = None  # HITS_VERTEX: the vertex z reached
    candidates: Tuple[EdgePoint, ...] = ()  # NO_UNIQUE_CHORD

    @property
    def ok(self) -> bool:
        return self.kind == OK


class UnrealizableBranch(ValueError):
    pass


def pair_sign(T: TablePair, p: PhasePair) -> int:
    """Sign of det(nu_x, nu_y) = sign of cross(e_x, e_y); 0 on parallel edges."""
    ex = T.polys[p.x.table].edge_vec(p.x.edge)
    ey = T.polys[p.y.table].edge_vec(p.y.edge)
    c = cross(ex, ey)
    return (c > 0) - (c < 0)


def _hit_to_edge_point(T: TablePair, table: int, hit) -> EdgePoint:
    if hit.is_interval:
        # collinear overlap: the near end of the overlapped edge is a vertex
        P = T.polys[table]
        i = hit.edge
        if hit.point == P.vertices[i]:
            return EdgePoint(table, i, rat(0))
        return EdgePoint(table, (i + 1) % P.n, rat(0))
    if hit.is_vertex:
        return EdgePoint(table, hit.vertex, rat(0))
    return EdgePoint(table, hit.edge, hit.u)


def _chord_candidates(T: TablePair, x: EdgePoint, direction) -> List[EdgePoint]:
    """All z with open segment xz interior and xz parallel to direction.

    For x in the open part of an edge this is the single inward first hit;
    for a vertex x both signs of the direction are tried (0, 1 or 2 hits).
    """
    A = T.polys[x.table]
    px = T.point(x)
    out = []
    if not x.is_vertex:
        e = A.edge_vec(x.edge)
        c = cross(e, direction)
        if c == 0:
            return out
        inward = direction if c > 0 else (-direction[0], -direction[1])
        h = first_boundary_hit(A, px, inward)
        if h is not None and not (h.is_interval and h.t <= 0):
            out.append(_hit_to_edge_point(T, x.table, h))
        return out
    for sgn in (1, -1):
        d = (direction[0] * sgn, direction[1] * sgn)
        h = first_boundary_hit(A, px, d)
        if h is None or (h.is_interval and h.t <= 0):
            continue
        z = _hit_to_edge_point(T, x.table, h)
        if open_segment_in_interior(A, px, T.point(z)):
            out.append(z)
    return out


def step(T: TablePair, p: PhasePair) -> StepOutcome:
    """One application of the billiard map; every failure is an outcome."""
    x, y = p
    if x.table == y.table:
        raise ValueError("phase pairs alternate tables (use opposite tags)")
    if y.is_vertex:
        return StepOutcome(Y_IS_VERTEX)
    d = T.polys[y.table].edge_vec(y.edge)
    if not x.is_vertex and cross(T.polys[x.table].edge_vec(x.edge), d) == 0:
        return StepOutcome(PARALLEL_EDGES)
    cands = _chord_candidates(T, x, d)
    if len(cands) != 1:
        return StepOutcome(NO_UNIQUE_CHORD, candidates=tuple(cands))
    z = cands[0]
    nxt = PhasePair(y, z)
    if z.is_vertex:
        return StepOutcome(HITS_VERTEX, pair=nxt, vertex=z)
    return StepOutcome(OK, pair=nxt)


def step_back(T: TablePair, p: PhasePair) -> StepOutcome:
    """The inverse map sigma . step . sigma (swap, step, swap)."""
    out = step(T, PhasePair(p.y, p.x))
    if out.pair is None:
        return out
    w = out.pair[1]
    return StepOutcome(out.kind, pair=PhasePair(w, p.x), vertex=out.vertex)


def continuations_at_vertex(T: TablePair, p: PhasePair) -> List[StepOutcome]:
    """All chords from the vertex x parallel to y's edge (0, 1 or 2)."""
    x, y = p
    if not x.is_vertex:
        raise ValueError("x is not a vertex")
    if y.is_vertex:
        raise ValueError("y is a vertex")
    d = T.polys[y.table].edge_vec(y.edge)
    outs = []
    for z in _chord_candidates(T, x, d):
        nxt = PhasePair(y, z)
        if z.is_vertex:
            outs.append(StepOutcome(HITS_VERTEX, pair=nxt, vertex=z))
        else:
            outs.append(StepOutcome(OK, pair=nxt))
    return outs


# -- exact affine branch atlas ------------------------------------------------


class BranchAtlas:
    """Per-(x table, x edge, y edge) piecewise-affine description of x -> z.

    An entry is None for parallel edges, else (breaks, branches) where
    breaks are the x-parameters in (0,1) at which the chord passes through
    some vertex of x's polygon, and branches[i] = (k, alpha, beta) gives
    z = alpha + beta * s on edge k for s in the i-th open gap.

    Entries are deterministic functions of the table, so concurrent lazy
    construction is harmless (threads may redundantly compute the same
    value); distinct seeds can therefore be scanned in parallel sharing
    one atlas.
    """

    def __init__(self, T: TablePair):
        self.T = T
        self.entries = {}

    def entry(self, tx: int, ei: int, ej: int):
        key = (tx, ei, ej)
        try:
            return self.entries[key]
        except KeyError:
            e = self._build(tx, ei, ej)
            self.entries[key] = e
            return e

    def _build(self, tx: int, ei: int, ej: int):
        T = self.T
        A = T.polys[tx]
        d = T.polys[1 - tx].edge_vec(ej)
        e_i = A.edge_vec(ei)
        ced = cross(e_i, d)
        if ced == 0:
            return None
        v_i = A.vertices[ei]
        breaks = set()
        for v in A.vertices:
            s = rat(cross(sub(v, v_i), d)) / ced
            if 0 < s < 1:
                breaks.add(s)
        breaks = sorted(breaks)
        branches = []
        lo = rat(0)
        for hi in list(breaks) + [rat(1)]:
            s_mid = (lo + hi) / 2
            x_mid = EdgePoint(tx, ei, s_mid)
            cands = _chord_candidates(T, x_mid, d)
            assert len(cands) == 1, "interior chord must be unique off breakpoints"
            z = cands[0]
            k = z.edge
            e_k = A.edge_vec(k)
            cek = cross(e_k, d)
            beta = rat(ced) / cek
            alpha = rat(cross(sub(v_i, A.vertices[k]), d)) / cek
            assert alpha + beta * s_mid == z.t
            branches.append((k, alpha, beta))
            lo = hi
        return (breaks, branches)


def affine_step_coeffs(T: TablePair, i: EdgeRef, j: EdgeRef, k: EdgeRef,
                       atlas: Optional[BranchAtlas] = None, x_param=None):
    """Exact (a, b) with z = a*x + b in edge parameters for branch (i,j)->k.

    Several sub-intervals of edge i can map onto edge k with different
    offsets; pass x_param to select the sub-interval containing it (the
    coefficients of the branch actually taken by an orbit). Without it the
    first matching sub-interval is returned.

    Raises UnrealizableBranch if no phase pair on edges (i, j) maps to
    edge k, or on parallel edges.
    """
    if j.table != 1 - i.table or k.table != i.table:
        raise UnrealizableBranch("tables do not alternate")
    atlas = atlas or BranchAtlas(T)
    entry = atlas.entry(i.table, i.index, j.index)
    if entry is None:
        raise UnrealizableBranch("parallel edges")
    breaks, branches = entry
    if x_param is not None:
        idx = bisect_left(breaks, x_param)
        if (idx < len(breaks) and breaks[idx] == x_param) or x_param == 0:
            raise UnrealizableBranch("x_param sits on a branch boundary")
        k_edge, alpha, beta = branches[idx]
        if k_edge != k.index:
            raise UnrealizableBranch(
                f"the branch at {x_param} maps to edge {k_edge}, not {k.index}")
        return (beta, alpha)
    for k_edge, alpha, beta in branches:
        if k_edge == k.index:
            return (beta, alpha)
    raise UnrealizableBranch(f"no sub-interval of edge {i.index} maps to edge {k.index}")


# -- iteration ----------------------------------------------------------------


@dataclass
class Trajectory:
    points: List[EdgePoint]
    seed_index: int  # position of x0 in points
    forward_stop: Optional[StepOutcome]  # None when the orbit closed or hit budget
    backward_stop: Optional[StepOutcome]
    period: Optional[int] = None
    forward_budget_hit: bool = False
    backward_budget_hit: bool = False


@dataclass
class SymbolicTrajectory:
    symbols: List[EdgeRef]


def _scan(T, seed: PhasePair, max_steps: int, atlas: BranchAtlas, record):
    """Forward iteration core; appends new points to record if given.

    Returns (period, stop_outcome, budget_hit, steps_run).
    """
    x, y = seed
    ex, sx, ey, sy, tx = x.edge, x.t, y.edge, y.t, x.table
    if sy == 0:
        return None, StepOutcome(Y_IS_VERTEX), False, 0
    e0, s0, e1, s1, t0 = ex, sx, ey, sy, tx
    entries = atlas.entries
    entry_of = atlas.entry
    steps = 0
    while steps < max_steps:
        entry = entries.get((tx, ex, ey), False)
        if entry is False:
            entry = entry_of(tx, ex, ey)
        if entry is None:
            return None, StepOutcome(PARALLEL_EDGES), False, steps
        breaks, branches = entry
        if sx == 0:
            idx = -1  # vertex start: resolve geometrically
        else:
            idx = bisect_left(breaks, sx)
            if idx < len(breaks) and breaks[idx] == sx:
                idx = -1  # chord exactly through a vertex
        if idx < 0:
            out = step(T, PhasePair(EdgePoint(tx, ex, sx), EdgePoint(1 - tx, ey, sy)))
            if out.kind == HITS_VERTEX and record is not None:
                record.append(out.vertex)
            if out.kind != OK:
                # a vertex hit is still a completed step of the trajectory
                return None, out, False, steps + (out.kind == HITS_VERTEX)
            z = out.pair[1]
            k, sz = z.edge, z.t
        else:
            k, alpha, beta = branches[idx]
            sz = alpha + beta * sx
        if record is not None:
            record.append(EdgePoint(tx, k, sz))
        steps += 1
        ex, sx, ey, sy, tx = ey, sy, k, sz, 1 - tx
        if ex == e0 and ey == e1 and tx == t0 and sx == s0 and sy == s1:
            return steps, None, False, steps
    return None, None, True, steps


def scan_orbit(T: TablePair, seed: PhasePair, max_steps: int,
               atlas: Optional[BranchAtlas] = None):
    """Fast forward scan: (period or None, stop kind, steps run).

    stop kind is PERIODIC, BUDGET, or the terminal StepOutcome kind. Since
    the map is invertible where defined, any state repetition within the
    budget forces a return to the seed, so comparing against the seed alone
    is a complete repetition check.
    """
    atlas = atlas or BranchAtlas(T)
    period, out, budget_hit, steps = _scan(T, seed, max_steps, atlas, None)
    if period is not None:
        return period, PERIODIC, steps
    if budget_hit:
        return None, BUDGET, steps
    return None, out.kind, steps


def iterate(T: TablePair, seed: PhasePair, max_steps: int,
            atlas: Optional[BranchAtlas] = None, backward: bool = True):
    """Iterate forward and backward from seed, with exact period detection.

    Returns (Trajectory, SymbolicTrajectory). Backward iteration is skipped
    for periodic orbits (the orbit is already closed). Detected periods are
    minimal and even.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    atlas = atlas or BranchAtlas(T)
    forward: List[EdgePoint] = [seed.x, seed.y]
    period, fstop, fbudget, _ = _scan(T, seed, max_steps, atlas, forward)
    bstop = None
    bbudget = False
    back: List[EdgePoint] = []
    if period is not None:
        assert period % 2 == 0, "periods are even in the two-table encoding"
    elif not backward:
        pass
    else:
        pair = seed
        while len(back) < max_steps:
            out = step_back(T, pair)
            if out.pair is not None:
                back.append(out.pair[0])
            if out.kind != OK:
                bstop = out
                break
            pair = out.pair
        else:
            bbudget = True
    points = list(reversed(back)) + forward
    traj = Trajectory(
        points=points,
        seed_index=len(back),
        forward_stop=fstop,
        backward_stop=bstop,
        period=period,
        forward_budget_hit=fbudget,
        backward_budget_hit=bbudget,
    )
    sym = SymbolicTrajectory([EdgeRef(p.table, p.edge) for p in points])
    return traj, sym
