"""Stratification sets: filled vertex set F, critical set C, C-grid, N-depth.

The critical set is computed by the segment-splitting recursion: launch the
phase segment {vertex} x (open edge), push it forward two billiard steps at
a time (the even point advances by one chord, the partner interval by one
exact affine branch map), split the interval where a fiber's chord hits a
vertex, trace the split parameters back to the initial segment, and recurse
on the open subsegments. A branch ends when its even chain hits a vertex.

When the recursion does not close within budget, accumulation at vertices
is certified per initial segment: at least ACCUMULATION_RUN consecutive
backtraced split parameters decaying to an endpoint with an exactly
constant rational ratio (branch maps are affine, so genuine accumulation is
exactly geometric). The diagnosis LimitPointsAtVertices additionally
requires every still-active segment to be parked inside a certified tail;
anything else is reported Inconclusive.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .engine import (
    HITS_VERTEX,
    OK,
    BranchAtlas,
    PhasePair,
    _chord_candidates,
    step,
)
from .rational import rat
from .table import EdgePoint, TablePair

CLOSED = "closed"
BUDGET_EXCEEDED = "budget_exceeded"
FINITE = "finite"
LIMIT_POINTS_AT_VERTICES = "limit_points_at_vertices"
INCONCLUSIVE = "inconclusive"

ACCUMULATION_RUN = 8  # consecutive exact-ratio gaps required for a certificate


class InconclusiveInput(ValueError):
    pass


# -- filled set of vertices ---------------------------------------------------


@dataclass
class FilledSet:
    points: Tuple[Set[EdgePoint], Set[EdgePoint]]  # per table
    rounds: int
    status: str  # CLOSED or BUDGET_EXCEEDED

    @property
    def sizes(self) -> Tuple[int, int]:
        return (len(self.points[0]), len(self.points[1]))


def filled_set(T: TablePair, max_points: int = 4000, max_rounds: int = 64) -> FilledSet:
    """Close the vertex sets under interior chords parallel to opposite edges."""
    if max_points < 1 or max_rounds < 1:
        raise ValueError("budgets must be >= 1")
    dirs = (T.polys[1].edge_directions(), T.polys[0].edge_directions())
    found: Tuple[Set[EdgePoint], Set[EdgePoint]] = (set(), set())
    frontier: List[EdgePoint] = []
    for side in (0, 1):
        for i in range(T.polys[side].n):
            ep = T.vertex_point(side, i)
            found[side].add(ep)
            frontier.append(ep)
    rounds = 0
    while frontier and rounds < max_rounds:
        rounds += 1
        fresh: List[EdgePoint] = []
        for ep in frontier:
            side = ep.table
            for d in dirs[side]:
                for z in _chord_candidates(T, ep, d):
                    if z not in found[side]:
                        found[side].add(z)
                        fresh.append(z)
        if not fresh:
            return FilledSet(found, rounds, CLOSED)
        if sum(len(s) for s in found) > max_points:
            return FilledSet(found, rounds, BUDGET_EXCEEDED)
        frontier = fresh
    status = CLOSED if not frontier else BUDGET_EXCEEDED
    return FilledSet(found, rounds, status)


# -- critical set -------------------------------------------------------------


@dataclass(frozen=True)
class Provenance:
    """How a critical point was found: replaying iterate from seed_pair
    reproduces a vertex hit, and the point sits `index` steps into that
    trajectory."""

    seed_pair: PhasePair
    index: int
    kind: str  # "vertex", "odd_backtrace", "even_chain"


@dataclass
class AccumulationWitness:
    start: Tuple[int, int, int]  # (table of start vertex, vertex index, partner edge)
    vertex: EdgePoint  # the certified limit vertex (endpoint of the partner edge)
    toward_one: bool  # cascade decays toward edge parameter 1 (else toward 0)
    ratio: object  # exact rational ratio of successive distances, < 1
    distances: List[object]  # certified run of distances, outermost first


@dataclass
class CriticalSet:
    points: Tuple[Dict[EdgePoint, Provenance], Dict[EdgePoint, Provenance]]
    status: str  # FINITE, LIMIT_POINTS_AT_VERTICES, INCONCLUSIVE
    witnesses: List[AccumulationWitness]
    segments_processed: int
    active_segments: int

    def side(self, table: int) -> Set[EdgePoint]:
        return set(self.points[table])

    @property
    def sizes(self) -> Tuple[int, int]:
        return (len(self.points[0]), len(self.points[1]))


@dataclass
class _Job:
    side: int  # table of the even chain
    even_pt: EdgePoint  # current even point (the start vertex at depth 0)
    first_even: Optional[EdgePoint]  # branch choice at the start vertex
    edge_j: int  # partner interval's edge on table 1-side
    lo: object
    hi: object
    psi_a: object  # pullback to the initial segment: y0 = psi_a * y + psi_b
    psi_b: object
    depth: int  # billiard steps taken so far (even)
    start: Tuple[int, int, int]


def _branch_for_range(entry, p_lo, p_hi):
    """The unique affine branch covering (p_lo, p_hi); asserts no real split."""
    breaks, branches = entry
    g0 = bisect_right(breaks, p_lo)
    g1 = bisect_left(breaks, p_hi)
    br = branches[g0]
    for g in range(g0 + 1, g1 + 1):
        assert branches[g] == br, "branch changed across a spurious breakpoint"
    return br


def critical_set(T: TablePair, budget: int = 4000,
                 atlas: Optional[BranchAtlas] = None) -> CriticalSet:
    """Segment-splitting recursion for the set of critical points."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    atlas = atlas or BranchAtlas(T)
    C: Tuple[Dict[EdgePoint, Provenance], Dict[EdgePoint, Provenance]] = ({}, {})
    for side in (0, 1):
        for i in range(T.polys[side].n):
            ep = T.vertex_point(side, i)
            C[side][ep] = Provenance(PhasePair(ep, ep), 0, "vertex")

    split_params: Dict[Tuple[int, int, int], Set] = {}
    queue: deque = deque()
    for side in (0, 1):
        for vi in range(T.polys[side].n):
            v = T.vertex_point(side, vi)
            for ej in range(T.polys[1 - side].n):
                queue.append(_Job(side, v, None, ej, rat(0), rat(1),
                                  rat(1), rat(0), 0, (side, vi, ej)))

    def add_point(ep: EdgePoint, prov: Provenance) -> None:
        if ep not in C[ep.table]:
            C[ep.table][ep] = prov

    def replay(job: _Job, y0, want: str) -> None:
        """Re-run the orbit from the initial pair until its vertex hit and
        collect the odd backtrace chain or the even chain into C."""
        side, vi, ej = job.start
        seed = PhasePair(T.vertex_point(side, vi), EdgePoint(1 - side, ej, y0))
        pts = [seed.x, seed.y]
        pair = seed
        for _ in range(job.depth + 4):
            if pair.x.is_vertex and len(pts) == 2:
                d = T.polys[pair.y.table].edge_vec(pair.y.edge)
                cands = _chord_candidates(T, pair.x, d)
                z = None
                if job.first_even is not None:
                    for c in cands:
                        if c == job.first_even:
                            z = c
                            break
                if z is None:
                    assert len(cands) == 1, "ambiguous replay at the start vertex"
                    z = cands[0]
                out_pair = PhasePair(pair.y, z)
                hit = z.is_vertex
            else:
                out = step(T, pair)
                assert out.kind in (OK, HITS_VERTEX), "replay left the phase space"
                out_pair = out.pair
                hit = out.kind == HITS_VERTEX
            pts.append(out_pair[1])
            pair = out_pair
            if hit:
                break
        assert pts[-1].is_vertex, "provenance replay must reproduce the vertex hit"
        first = 1 if want == "odd_backtrace" else 2
        for k in range(first, len(pts), 2):
            add_point(pts[k], Provenance(seed, k, want))

    processed = 0
    while queue and processed < budget:
        processed += 1
        job = queue.popleft()
        A = job.side
        d = T.polys[1 - A].edge_vec(job.edge_j)
        conts = _chord_candidates(T, job.even_pt, d)
        for z in conts:
            first_even = job.first_even if job.first_even is not None else z
            if z.is_vertex:
                # even-chain death: every even point of this branch is critical
                mid = job.psi_a * ((job.lo + job.hi) / 2) + job.psi_b
                probe = _Job(A, job.even_pt, first_even, job.edge_j, job.lo,
                             job.hi, job.psi_a, job.psi_b, job.depth, job.start)
                replay(probe, mid, "even_chain")
                continue
            entry = atlas.entry(1 - A, job.edge_j, z.edge)
            assert entry is not None, "pairs reached by the map sit on non-parallel edges"
            breaks = entry[0]
            genuine = []
            for s in breaks:
                if not (job.lo < s < job.hi):
                    continue
                w = EdgePoint(1 - A, job.edge_j, s)
                if step(T, PhasePair(w, z)).kind == HITS_VERTEX:
                    genuine.append(s)
            for s in genuine:
                y0 = job.psi_a * s + job.psi_b
                split_params.setdefault(job.start, set()).add(y0)
                probe = _Job(A, job.even_pt, first_even, job.edge_j, job.lo,
                             job.hi, job.psi_a, job.psi_b, job.depth, job.start)
                replay(probe, y0, "odd_backtrace")
            bounds = [job.lo] + genuine + [job.hi]
            for p_lo, p_hi in zip(bounds[:-1], bounds[1:]):
                k, alpha, beta = _branch_for_range(entry, p_lo, p_hi)
                u_lo = alpha + beta * p_lo
                u_hi = alpha + beta * p_hi
                if u_lo > u_hi:
                    u_lo, u_hi = u_hi, u_lo
                # pullback composition: y0 = psi(s) and s = (u - alpha)/beta
                a = job.psi_a / beta
                b = job.psi_b - job.psi_a * alpha / beta
                queue.append(_Job(A, z, first_even, k, u_lo, u_hi, a, b,
                                  job.depth + 2, job.start))
            # z itself is critical even while the chain is alive: reversing
            # the trajectory ends it in the start vertex at odd distance
            if z not in C[z.table]:
                k0, alpha0, beta0 = _branch_for_range(entry, bounds[0], bounds[1])
                w_mid = EdgePoint(1 - A, k0,
                                  alpha0 + beta0 * (bounds[0] + bounds[1]) / 2)
                C[z.table][z] = Provenance(PhasePair(w_mid, z), job.depth + 3,
                                           "even_chain")

    if not queue:
        return CriticalSet(C, FINITE, [], processed, 0)
    # finite-budget evidence only: the certificates witness exactly geometric
    # backtrace cascades, and every unfinished segment must sit inside one.
    # Whether the table is genuinely fully periodic is for the classifier's
    # sampled-orbit audit; a necktie-like table can certify here and still
    # fail that audit.
    witnesses = _certify(T, split_params)
    parked = _all_active_parked(list(queue), witnesses)
    status = LIMIT_POINTS_AT_VERTICES if (witnesses and parked) else INCONCLUSIVE
    return CriticalSet(C, status, witnesses, processed, len(queue))


def _certify(T: TablePair, split_params) -> List[AccumulationWitness]:
    out = []
    for start, params in split_params.items():
        side, _vi, ej = start
        ps = sorted(params)
        if len(ps) < ACCUMULATION_RUN + 1:
            continue
        for toward_one in (False, True):
            if toward_one:
                dists = [1 - p for p in reversed(ps)]
            else:
                dists = list(ps)
            # maximal run of exactly-constant decay starting at the endpoint
            ratio = rat(dists[0]) / dists[1]
            if not (0 < ratio < 1):
                continue
            run = [dists[0], dists[1]]
            for d in dists[2:]:
                if rat(run[-1]) / d != ratio:
                    break
                run.append(d)
            if len(run) < ACCUMULATION_RUN + 1:
                continue
            n_other = T.polys[1 - side].n
            v_idx = (ej + 1) % n_other if toward_one else ej
            out.append(AccumulationWitness(
                start=start,
                vertex=T.vertex_point(1 - side, v_idx),
                toward_one=toward_one,
                ratio=ratio,
                distances=list(reversed(run)),
            ))
    return out


def _all_active_parked(jobs: List[_Job], witnesses) -> bool:
    """Every unfinished segment must sit inside a certified cascade tail."""
    if not witnesses:
        return False
    tails: Dict[Tuple[int, int, int], List[Tuple[bool, object]]] = {}
    for w in witnesses:
        bound = max(w.distances)
        tails.setdefault(w.start, []).append((w.toward_one, bound))
    for job in jobs:
        y_lo = job.psi_a * job.lo + job.psi_b
        y_hi = job.psi_a * job.hi + job.psi_b
        if y_lo > y_hi:
            y_lo, y_hi = y_hi, y_lo
        ok = False
        for toward_one, bound in tails.get(job.start, ()):
            if toward_one and 1 - y_lo <= bound:
                ok = True
                break
            if not toward_one and y_hi <= bound:
                ok = True
                break
        if not ok:
            return False
    return True


# -- C-grid and truncated discontinuity set -----------------------------------


@dataclass
class GridReport:
    # per phase-space component (x on table 0, then x on table 1): the C
    # points cutting the component by vertical resp. horizontal lines
    vertical: Tuple[List[EdgePoint], List[EdgePoint]]
    horizontal: Tuple[List[EdgePoint], List[EdgePoint]]
    witnesses: List[AccumulationWitness]

    def line_count(self, component: int) -> int:
        return len(self.vertical[component]) + len(self.horizontal[component])


def c_grid(C: CriticalSet) -> GridReport:
    if C.status == INCONCLUSIVE:
        raise InconclusiveInput("critical set did not close and has no certificate")
    sides = (sorted(C.points[0]), sorted(C.points[1]))
    return GridReport(
        vertical=(sides[0], sides[1]),
        horizontal=(sides[1], sides[0]),
        witnesses=list(C.witnesses),
    )


@dataclass(frozen=True)
class PhaseSegment:
    """A product piece in one phase-space component (x on x_table).

    One factor is a point (lo == hi); the other an interval in one edge.
    The y factor lives on table 1 - x_table.
    """

    x_table: int
    x_edge: int
    x_lo: object
    x_hi: object
    y_edge: int
    y_lo: object
    y_hi: object

    @property
    def x_is_point(self) -> bool:
        return self.x_lo == self.x_hi

    def mirrored(self) -> "PhaseSegment":
        return PhaseSegment(1 - self.x_table, self.y_edge, self.y_lo, self.y_hi,
                            self.x_edge, self.x_lo, self.x_hi)


def discontinuity_depth(T: TablePair, d: int, max_segments: int = 20000,
                        atlas: Optional[BranchAtlas] = None,
                        include_mirror: bool = True) -> List[List[PhaseSegment]]:
    """Layers N_0 .. N_d as exact phase segments, optionally with mirrors.

    Layer i+1 is the exact preimage of layer i under the billiard map. The
    layers without mirrors satisfy: second coordinates of points of layer
    2i lie in C.
    """
    if d < 0:
        raise ValueError("depth must be >= 0")
    atlas = atlas or BranchAtlas(T)
    zero, one = rat(0), rat(1)
    layers: List[List[PhaseSegment]] = []
    n0: List[PhaseSegment] = []
    for tx in (0, 1):
        for ex in range(T.polys[tx].n):
            for ev in range(T.polys[1 - tx].n):
                n0.append(PhaseSegment(tx, ex, zero, one, ev, zero, zero))
    layers.append(n0)
    total = len(n0)
    for _ in range(d):
        cur: List[PhaseSegment] = []
        for piece in layers[-1]:
            new = _pull_back(T, atlas, piece)
            total += len(new)
            if total > max_segments:
                raise MemoryError("segment budget exceeded; lower the depth")
            cur.extend(new)
        layers.append(cur)
    if include_mirror:
        layers = [layer + [p.mirrored() for p in layer] for layer in layers]
    return layers


def _pull_back(T: TablePair, atlas: BranchAtlas, piece: PhaseSegment) -> List[PhaseSegment]:
    out: List[PhaseSegment] = []
    tx = piece.x_table
    if piece.x_is_point:
        # {c} x J pulls back to (w(y), c) with w the chord from y along c's edge
        c = EdgePoint(tx, piece.x_edge, piece.x_lo)
        if c.is_vertex:
            return out  # pairs mapping onto a vertex-x pair are already in N_0
        entry = atlas.entry(1 - tx, piece.y_edge, piece.x_edge)
        if entry is None:
            return out
        breaks = entry[0]
        genuine = []
        for s in breaks:
            if not (piece.y_lo < s < piece.y_hi):
                continue
            w = EdgePoint(1 - tx, piece.y_edge, s)
            if step(T, PhasePair(w, c)).kind == HITS_VERTEX:
                genuine.append(s)
        bounds = [piece.y_lo] + genuine + [piece.y_hi]
        for p_lo, p_hi in zip(bounds[:-1], bounds[1:]):
            if p_lo == p_hi:
                continue
            k, alpha, beta = _branch_for_range(entry, p_lo, p_hi)
            u0, u1 = alpha + beta * p_lo, alpha + beta * p_hi
            if u0 > u1:
                u0, u1 = u1, u0
            out.append(PhaseSegment(1 - tx, k, u0, u1,
                                    piece.x_edge, piece.x_lo, piece.x_hi))
    else:
        # I x {v} pulls back to {w} x I for each chord w from v along I's edge
        v = EdgePoint(1 - tx, piece.y_edge, piece.y_lo)
        d = T.polys[tx].edge_vec(piece.x_edge)
        for w in _chord_candidates(T, v, d):
            out.append(PhaseSegment(1 - tx, w.edge, w.t, w.t,
                                    piece.x_edge, piece.x_lo, piece.x_hi))
    return out
