"""Tiles, phase-space decomposition, and the periodicity classification.

A tile is a maximal phase rectangle on which the symbolic trajectory is
constant. tile_of propagates the seed's rectangle through the exact affine
branch maps, shrinking to each branch's domain; positive-area periodic
tiles carry a return map of order 1, 2 or 4.

classify runs the decision cascade: F closes -> uniformly bounded periods;
else C finite -> bounded periods with the sharper constant; else certified
vertex-accumulation of C -> fully-periodic evidence (audited by sampling);
else sampling verdicts (isolated orbit / none periodic / inconclusive).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .engine import (
    BUDGET,
    PERIODIC,
    BranchAtlas,
    PhasePair,
    iterate,
    scan_orbit,
)
from .geom import cross, parallel
from .rational import rat
from .sampling import sample_pairs
from .strata import (
    CLOSED,
    FINITE,
    LIMIT_POINTS_AT_VERTICES,
    CriticalSet,
    FilledSet,
    critical_set,
    filled_set,
)
from .table import EdgePoint, TablePair


class SeedHitsVertex(ValueError):
    pass


class TileBudget(ValueError):
    pass


class InfiniteC(ValueError):
    pass


class FNotClosed(ValueError):
    pass


@dataclass
class Tile:
    """Phase rectangle (x interval) x (y interval); point factors allowed."""

    x_table: int
    x_edge: int
    x_lo: object
    x_hi: object
    y_edge: int  # on table 1 - x_table
    y_lo: object
    y_hi: object
    period: Optional[int] = None
    return_order: Optional[int] = None

    def area(self, T: TablePair):
        e_x = T.polys[self.x_table].edge_vec(self.x_edge)
        e_y = T.polys[1 - self.x_table].edge_vec(self.y_edge)
        return abs(cross(e_x, e_y)) * (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo)


def tile_of(T: TablePair, seed: PhasePair, budget: int = 100000,
            atlas: Optional[BranchAtlas] = None) -> Tile:
    """Maximal phase rectangle around seed with the seed's symbolic trajectory.

    Follows the orbit, intersecting the pullback of every branch domain.
    When the edge cycle first repeats, the tile is the largest sub-rectangle
    invariant under the composed affine return map that still contains the
    seed: identity factors keep their interval, flips shrink to the
    symmetric core, and any contracting/expanding factor collapses to its
    fixed point (zero-area tiles of isolated orbits).

    Raises SeedHitsVertex if the orbit leaves the phase space within the
    budget and TileBudget if the edge cycle never closes in time.
    """
    atlas = atlas or BranchAtlas(T)
    x, y = seed
    if x.is_vertex or y.is_vertex:
        raise SeedHitsVertex("seed touches a vertex line")
    # rectangle in seed coordinates, kept as open intervals
    iv = [[rat(0), rat(1)], [rat(0), rat(1)]]
    # current pair coordinates as affine images of one seed coordinate each:
    # (which seed coord, a, b) meaning param = a * seed_coord + b
    map_x = (0, rat(1), rat(0))
    map_y = (1, rat(1), rat(0))
    ex, sx, tx = x.edge, x.t, x.table
    ey, sy = y.edge, y.t
    x0_edge, y0_edge, t0 = x.edge, y.edge, x.table
    steps = 0
    while steps < budget:
        entry = atlas.entry(tx, ex, ey)
        if entry is None:
            raise SeedHitsVertex("orbit reached a parallel-edge pair")
        breaks, branches = entry
        idx = bisect_left(breaks, sx)
        if (idx < len(breaks) and breaks[idx] == sx) or sx == 0:
            raise SeedHitsVertex("orbit hits a vertex")
        b_lo = breaks[idx - 1] if idx > 0 else rat(0)
        b_hi = breaks[idx] if idx < len(breaks) else rat(1)
        which, a, b = map_x
        lo, hi = (b_lo - b) / a, (b_hi - b) / a
        if lo > hi:
            lo, hi = hi, lo
        if lo > iv[which][0]:
            iv[which][0] = lo
        if hi < iv[which][1]:
            iv[which][1] = hi
        k, alpha, beta = branches[idx]
        sz = alpha + beta * sx
        map_z = (which, beta * a, beta * b + alpha)
        steps += 1
        ex, sx, ey, sy = ey, sy, k, sz
        tx = 1 - tx
        map_x, map_y = map_y, map_z
        if ex == x0_edge and ey == y0_edge and tx == t0:
            tile = _invariant_core(seed, iv, map_x, map_y, steps)
            if tile is not None:
                return tile
    raise TileBudget(f"no edge-cycle closure within {budget} steps")


def _invariant_core(seed: PhasePair, iv, map_x, map_y, period: int) -> Optional[Tile]:
    """Largest seed-containing rectangle invariant under the return map,
    or None when the candidate period is not the symbolic period."""
    assert map_x[0] == 0 and map_y[0] == 1, "even period restores the factor split"
    x, y = seed
    factors = []
    orders = []
    for (which, a, b), lo, hi, s_seed in (
        (map_x, iv[0][0], iv[0][1], x.t),
        (map_y, iv[1][0], iv[1][1], y.t),
    ):
        if a == 1:
            if b != 0:
                return None  # nontrivial translation has no invariant interval
            factors.append((lo, hi))
            orders.append(1)
        elif a == -1:
            lo2, hi2 = max(lo, b - hi), min(hi, b - lo)
            if not (lo2 <= s_seed <= hi2):
                return None
            factors.append((lo2, hi2))
            orders.append(2)
        else:
            fixed = b / (1 - a)
            if fixed != s_seed:
                return None
            factors.append((fixed, fixed))
            orders.append(1)
    return Tile(x.table, x.edge, factors[0][0], factors[0][1],
                y.edge, factors[1][0], factors[1][1],
                period=period, return_order=max(orders))


def _compose(f, g):
    # (f . g)(s) = f1*(g1*s + g0) + f0
    return (f[0] * g[0], f[0] * g[1] + f[1])


def decompose(T: TablePair, C: CriticalSet, atlas: Optional[BranchAtlas] = None,
              orbit_budget: int = 100000) -> List[Tile]:
    """Cut phase space by the C-grid and merge cells into periodic tiles."""
    if C.status != FINITE:
        raise InfiniteC("decomposition requires a finite critical set")
    atlas = atlas or BranchAtlas(T)
    cuts: List[Dict[int, List]] = [{}, {}]
    for side in (0, 1):
        per_edge: Dict[int, set] = {e: {rat(0), rat(1)} for e in range(T.polys[side].n)}
        for ep in C.points[side]:
            if not ep.is_vertex:
                per_edge[ep.edge].add(ep.t)
        cuts[side] = {e: sorted(v) for e, v in per_edge.items()}

    tiles: List[Tile] = []
    for tx in (0, 1):
        cells: Dict[Tuple, List] = {}
        signature: Dict[Tuple, Tuple] = {}
        for ex, xcuts in cuts[tx].items():
            for ey, ycuts in cuts[1 - tx].items():
                if parallel(T.polys[tx].edge_vec(ex), T.polys[1 - tx].edge_vec(ey)):
                    continue
                for xi in range(len(xcuts) - 1):
                    for yi in range(len(ycuts) - 1):
                        key = (ex, ey, xi, yi)
                        x_lo, x_hi = xcuts[xi], xcuts[xi + 1]
                        y_lo, y_hi = ycuts[yi], ycuts[yi + 1]
                        probe = PhasePair(
                            EdgePoint(tx, ex, (x_lo + x_hi) / 2),
                            EdgePoint(1 - tx, ey, (y_lo + y_hi) / 2),
                        )
                        try:
                            t = tile_of(T, probe, orbit_budget, atlas)
                        except (SeedHitsVertex, TileBudget) as e:
                            raise InfiniteC(f"cell probe failed: {e}") from e
                        _, sym = iterate(T, probe, t.period, atlas)
                        cells[key] = [x_lo, x_hi, y_lo, y_hi, t.period, t.return_order]
                        signature[key] = tuple(sym.symbols[: t.period])
        tiles.extend(_merge_cells(T, tx, cells, signature, atlas))
    return tiles


def _merge_cells(T, tx, cells, signature, atlas) -> List[Tile]:
    parent = {k: k for k in cells}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    index = {}
    for key in cells:
        index.setdefault(key[:2], []).append(key)
    for (ex, ey), keys in index.items():
        for key in keys:
            _, _, xi, yi = key
            for nb in ((ex, ey, xi + 1, yi), (ex, ey, xi, yi + 1)):
                if nb in cells and signature.get(nb) == signature[key] \
                        and _cells_touch(cells[key], cells[nb]):
                    union(key, nb)
    groups: Dict[Tuple, List] = {}
    for key in cells:
        groups.setdefault(find(key), []).append(key)
    out = []
    for root, keys in groups.items():
        ex, ey = root[0], root[1]
        x_lo = min(cells[k][0] for k in keys)
        x_hi = max(cells[k][1] for k in keys)
        y_lo = min(cells[k][2] for k in keys)
        y_hi = max(cells[k][3] for k in keys)
        # merged cells must tile the bounding rectangle exactly
        assert sum((cells[k][1] - cells[k][0]) * (cells[k][3] - cells[k][2])
                   for k in keys) == (x_hi - x_lo) * (y_hi - y_lo), \
            "merged tile is not a rectangle"
        # cross-check: the maximal rectangle propagated from the probe agrees
        probe = PhasePair(EdgePoint(tx, ex, (x_lo + x_hi) / 2),
                          EdgePoint(1 - tx, ey, (y_lo + y_hi) / 2))
        t = tile_of(T, probe, atlas=atlas)
        assert (t.x_lo, t.x_hi, t.y_lo, t.y_hi) == (x_lo, x_hi, y_lo, y_hi), \
            "merged cells disagree with the propagated tile"
        out.append(Tile(tx, ex, x_lo, x_hi, ey, y_lo, y_hi,
                        period=t.period, return_order=t.return_order))
    return out


def _cells_touch(a, b) -> bool:
    ax_lo, ax_hi, ay_lo, ay_hi = a[:4]
    bx_lo, bx_hi, by_lo, by_hi = b[:4]
    if ax_lo == bx_lo and ax_hi == bx_hi:
        return ay_hi == by_lo or by_hi == ay_lo
    if ay_lo == by_lo and ay_hi == by_hi:
        return ax_hi == bx_lo or bx_hi == ax_lo
    return False


# -- classification ------------------------------------------------------------


@dataclass
class Classification:
    label: str  # "BP", "FP_unbounded_evidence", "IsolatedOrbitFound",
    # "NoPeriodicFoundUpTo", "Inconclusive"
    bound: Optional[int] = None
    criterion: Optional[str] = None  # which theorem branch fired
    sample_stats: Dict = field(default_factory=dict)
    certificates: Dict = field(default_factory=dict)
    filled: Optional[FilledSet] = None
    critical: Optional[CriticalSet] = None


def classify(T: TablePair,
             f_max_points: int = 2000, f_max_rounds: int = 40,
             c_budget: int = 4000,
             samples: int = 1000, sample_steps: int = 20000,
             atlas: Optional[BranchAtlas] = None) -> Classification:
    """Decision cascade for the periodicity class of a table pair."""
    atlas = atlas or BranchAtlas(T)
    F = filled_set(T, f_max_points, f_max_rounds)
    if F.status == CLOSED:
        bound = 4 * F.sizes[0] * F.sizes[1]
        stats = _sample_audit(T, samples, sample_steps, atlas, bound)
        return Classification("BP", bound=bound, criterion="filled_set_finite",
                              sample_stats=stats, filled=F)
    C = critical_set(T, c_budget, atlas)
    if C.status == FINITE:
        if T.single_table:
            n = C.sizes[0]
            bound = 2 * (n * n - n)
        else:
            bound = 4 * C.sizes[0] * C.sizes[1]
        stats = _sample_audit(T, samples, sample_steps, atlas, bound)
        return Classification("BP", bound=bound, criterion="critical_set_finite",
                              sample_stats=stats, filled=F, critical=C)
    if C.status == LIMIT_POINTS_AT_VERTICES:
        stats = _sample_audit(T, samples, sample_steps, atlas, None)
        if stats["non_periodic"] == 0:
            return Classification(
                "FP_unbounded_evidence", criterion="c_limit_points_at_vertices",
                sample_stats=stats, filled=F, critical=C,
                certificates={"witnesses": C.witnesses})
    stats = _sample_audit(T, samples, sample_steps, atlas, None)
    if stats["periodic"] == 0:
        return Classification("NoPeriodicFoundUpTo", sample_stats=stats,
                              criterion="sampling", filled=F, critical=C)
    if stats["periodic"] > 0 and stats["non_periodic"] > 0:
        # mixed behaviour: an isolated periodic orbit among non-periodic mass
        for pair, period in stats["periodic_seeds"][:20]:
            try:
                tile = tile_of(T, pair, atlas=atlas)
            except (SeedHitsVertex, TileBudget):
                continue
            if tile.area(T) == 0:
                return Classification(
                    "IsolatedOrbitFound", criterion="sampling",
                    sample_stats=stats, filled=F, critical=C,
                    certificates={"isolated_seed": pair, "period": period})
    return Classification("Inconclusive", sample_stats=stats, filled=F, critical=C)


def _sample_audit(T, samples, sample_steps, atlas, bound):
    stats = {"samples": samples, "steps": sample_steps, "periodic": 0,
             "non_periodic": 0, "vertex_stops": 0, "max_period": 0,
             "bound_violations": 0, "periodic_seeds": []}
    for pair in sample_pairs(T, samples):
        period, kind, _ = scan_orbit(T, pair, sample_steps, atlas)
        if kind == PERIODIC:
            stats["periodic"] += 1
            stats["max_period"] = max(stats["max_period"], period)
            stats["periodic_seeds"].append((pair, period))
            if bound is not None and period > bound:
                stats["bound_violations"] += 1
        elif kind == BUDGET:
            stats["non_periodic"] += 1
        else:
            stats["vertex_stops"] += 1
    return stats


# -- period bound report -------------------------------------------------------


@dataclass
class PeriodBoundReport:
    bound: int
    f_sizes: Tuple[int, int]
    observed_max_period: int
    orbits_checked: int
    ratio_invariant_ok: bool


def period_bound_report(T: TablePair, samples: int = 200,
                        sample_steps: int = 20000,
                        atlas: Optional[BranchAtlas] = None) -> PeriodBoundReport:
    """Bound 4|F-||F+| plus the even/odd-trajectory ratio invariant check.

    The ratio of a point's distance to the nearest F point on its left to
    the length of its F-segment is constant along the even and the odd
    trajectory separately, up to reflection (ratio -> 1 - ratio).
    """
    atlas = atlas or BranchAtlas(T)
    F = filled_set(T)
    if F.status != CLOSED:
        raise FNotClosed("filled set did not close; no bound applies")
    bound = 4 * F.sizes[0] * F.sizes[1]
    segments = _f_segments(T, F)
    max_period = 0
    checked = 0
    ratio_ok = True
    for pair in sample_pairs(T, samples):
        period, kind, _ = scan_orbit(T, pair, sample_steps, atlas)
        if kind != PERIODIC:
            continue
        checked += 1
        max_period = max(max_period, period)
        if period > bound:
            ratio_ok = False
        traj, _ = iterate(T, pair, period + 1, atlas)
        pts = traj.points[:period]
        for parity in (0, 1):
            ratios = set()
            for p in pts[parity::2]:
                r = _segment_ratio(segments, p)
                if r is None:
                    continue
                ratios.add(min(r, 1 - r))
            if len(ratios) > 1:
                ratio_ok = False
    return PeriodBoundReport(bound, F.sizes, max_period, checked, ratio_ok)


def _f_segments(T, F: FilledSet):
    """Per (table, edge): sorted F-point parameters including both ends."""
    seg: Dict[Tuple[int, int], List] = {}
    for side in (0, 1):
        per_edge: Dict[int, set] = {e: {rat(0), rat(1)} for e in range(T.polys[side].n)}
        for ep in F.points[side]:
            if not ep.is_vertex:
                per_edge[ep.edge].add(ep.t)
        for e, vals in per_edge.items():
            seg[(side, e)] = sorted(vals)
    return seg


def _segment_ratio(segments, p: EdgePoint):
    cuts = segments[(p.table, p.edge)]
    i = bisect_left(cuts, p.t)
    if i < len(cuts) and cuts[i] == p.t:
        return None  # orbit point sits exactly on F; stays in F forever
    lo, hi = cuts[i - 1], cuts[i]
    return (p.t - lo) / (hi - lo)
