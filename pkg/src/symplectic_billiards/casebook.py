"""Worked case studies: the crooked kite's isolated 6-orbit and the
necktie's vertex-free dynamics driven by the dyadic odometer.

The crooked kite is the quadrilateral (0,1), (0,0), (1,0), (X,Y) with
X > 1, Y > 1, |X - Y| < 1. Two ray families from the bottom resp. left side,
parallel to the slanted sides, intersect in inscribed triangles; matching
coordinates pins the parameters s0 and t0 of an exactly 6-periodic orbit
whose return map is a contraction, so its tile is a single point.

The necktie is the fixed square-kite pair. Orbits never close: the first
return map to a section through a kite edge is the von Neumann-Kakutani
interval exchange, conjugate to the dyadic odometer, which has no periodic
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .engine import (
    BUDGET,
    HITS_VERTEX,
    PERIODIC,
    BranchAtlas,
    PhasePair,
    affine_step_coeffs,
    iterate,
    scan_orbit,
)
from .geom import cross, sub
from .rational import Rat, is_dyadic, rat
from .sampling import van_der_corput
from .table import (
    MINUS,
    PLUS,
    EdgePoint,
    EdgeRef,
    TablePair,
    builtin,
    crooked_kite,
)
from .tiles import tile_of


class DegenerateAtBoundary(ValueError):
    pass


class DyadicInput(ValueError):
    pass


class DyadicSeed(ValueError):
    pass


class AllOnes(ValueError):
    pass


# -- crooked kite ---------------------------------------------------------------


@dataclass
class KiteOrbit:
    X: object
    Y: object
    s0: object  # bottom-side parameter of the inscribed vertical-edge triangle
    t0: object  # left-side height of the inscribed horizontal-edge triangle
    table: TablePair
    orbit: List[EdgePoint]  # the six phase points x_0 .. x_5
    contraction_factor: object  # |product of branch slopes| around the cycle


def _ray_hit(origin, direction, base, edge_vec):
    """Parameters (t, u) with origin + t*direction = base + u*edge_vec."""
    denom = cross(direction, edge_vec)
    if denom == 0:
        return None
    d = sub(base, origin)
    t = rat(cross(d, edge_vec)) / denom
    u = rat(cross(d, direction)) / denom
    return t, u


def kite_orbit6(X, Y) -> KiteOrbit:
    """The isolated 6-periodic orbit of the crooked kite, exactly.

    a(s) is the second kite intersection of the ray from (s,0) parallel to
    the top-left side, b(s) the one parallel to the bottom-right side; their
    x-coordinates cross at a unique s0. The analogous construction on the
    vertical side yields t0, and ((0,t0), b(s0)) seeds the orbit.
    """
    X, Y = rat(X), rat(Y)
    T = crooked_kite(X, Y)  # raises BadKiteParams outside the open region
    # vertices: 0:(0,1) 1:(0,0) 2:(1,0) 3:(X,Y); edges 1: bottom, 2: right
    # slant C->D, 3: top slant D->A, 0: left vertical A->B
    dir_a = (X, Y - 1)  # parallel to side D->A
    dir_b = (X - 1, Y)  # parallel to side C->D
    C_pt, D_pt = (rat(1), rat(0)), (X, Y)
    e_cd = (X - 1, Y)
    e_da = (-X, 1 - Y)

    # a(s): ray (s,0) + R*dir_a meets side CD; x-coordinate affine in s
    def a_x(s):
        t, u = _ray_hit((s, rat(0)), dir_a, C_pt, e_cd)
        return s + t * dir_a[0]

    def b_hit(s):
        t, u = _ray_hit((s, rat(0)), dir_b, D_pt, e_da)
        return (s + t * dir_b[0], u)  # x-coordinate and edge-3 parameter

    # solve a_x(s) = b_x(s); both sides are affine, so two evaluations fix them
    a0, a1 = a_x(rat(0)), a_x(rat(1))
    b0, b1 = b_hit(rat(0))[0], b_hit(rat(1))[0]
    denom = (a1 - a0) - (b1 - b0)
    if denom == 0:
        raise DegenerateAtBoundary("ray families never share an x-coordinate")
    s0 = (b0 - a0) / denom
    if not (0 < s0 < 1):
        raise DegenerateAtBoundary("s0 leaves the open bottom side")

    # the vertical-side construction: rays from (0,t) parallel to the slants
    def c_y(t):  # parallel to CD, lands on DA
        h = _ray_hit((rat(0), t), dir_b, D_pt, e_da)
        return t + h[0] * dir_b[1]

    def d_y(t):  # parallel to DA, lands on CD
        h = _ray_hit((rat(0), t), dir_a, C_pt, e_cd)
        return t + h[0] * dir_a[1]

    c0t, c1t = c_y(rat(0)), c_y(rat(1))
    d0t, d1t = d_y(rat(0)), d_y(rat(1))
    denom_t = (c1t - c0t) - (d1t - d0t)
    if denom_t == 0:
        raise DegenerateAtBoundary("vertical ray families never share a y-coordinate")
    t0 = (d0t - c0t) / denom_t
    if not (0 < t0 < 1):
        raise DegenerateAtBoundary("t0 leaves the open left side")

    # seed (x0, x1) = ((0,t0), b(s0)); left edge runs (0,1) -> (0,0)
    x0 = T.edge_point(MINUS, 0, 1 - t0)
    u_b = b_hit(s0)[1]
    if not (0 < u_b < 1):
        raise DegenerateAtBoundary("b(s0) is not in the open top side")
    x1 = T.edge_point(PLUS, 3, u_b)
    atlas = BranchAtlas(T)
    seed = PhasePair(x0, x1)
    period, kind, _ = scan_orbit(T, seed, 8, atlas)
    if kind == HITS_VERTEX:
        raise DegenerateAtBoundary("orbit runs into a vertex")
    if period != 6:
        raise DegenerateAtBoundary(f"constructed orbit is not 6-periodic ({kind})")
    traj, sym = iterate(T, seed, 7, atlas)
    pts = traj.points[:6]
    # slope of the section return map on {x0} x I: the three branch maps
    # carrying x1 -> x3 -> x5 -> x1. (The product over all six steps is +-1
    # because the map preserves the phase area.)
    factor = rat(1)
    for k in (1, 3, 5):
        i = sym.symbols[k]
        j = sym.symbols[(k + 1) % 6]
        l = sym.symbols[(k + 2) % 6]
        a, _b = affine_step_coeffs(T, i, j, EdgeRef(i.table, l.index), atlas,
                                   x_param=pts[k].t)
        factor *= a
    return KiteOrbit(X, Y, s0, t0, T, pts, abs(factor))


@dataclass
class KiteIsolationReport:
    contraction_factor: object
    contracts: bool
    tile_area: object
    perturbed_checked: int
    perturbed_periodic: int
    perturbation: object
    steps: int


def kite_isolation_check(K: KiteOrbit, delta_samples: int = 8,
                         delta=None, max_steps: int = 10000) -> KiteIsolationReport:
    """Contraction plus non-periodicity of nearby seeds; tile area is zero."""
    T = K.table
    atlas = BranchAtlas(T)
    delta = rat(delta) if delta is not None else rat(1, 1000)
    tile = tile_of(T, PhasePair(K.orbit[0], K.orbit[1]), atlas=atlas)
    periodic = 0
    checked = 0
    x0, x1 = K.orbit[0], K.orbit[1]
    for k in range(1, delta_samples + 1):
        for sign in (1, -1):
            t = x1.t + sign * delta * k / delta_samples
            if not (0 < t < 1):
                continue
            checked += 1
            seed = PhasePair(x0, EdgePoint(x1.table, x1.edge, t))
            period, kind, _ = scan_orbit(T, seed, max_steps, atlas)
            if kind == PERIODIC:
                periodic += 1
    return KiteIsolationReport(
        contraction_factor=K.contraction_factor,
        contracts=K.contraction_factor < 1,
        tile_area=tile.area(T),
        perturbed_checked=checked,
        perturbed_periodic=periodic,
        perturbation=delta,
        steps=max_steps,
    )


# -- dyadic odometer / von Neumann-Kakutani --------------------------------------


def vnk(t) -> Rat:
    """Von Neumann-Kakutani interval exchange on (0,1), dyadics excluded.

    On ((2^(l-1)-1)/2^(l-1), (2^l-1)/2^l) the map is the translation
    s -> s + 2^(1-l) + 2^(-l) - 1.
    """
    t = rat(t)
    if not (0 < t < 1):
        raise ValueError("t must be in (0,1)")
    if is_dyadic(t):
        raise DyadicInput(f"{t} is dyadic")
    level = 1
    while not (1 - rat(1, 2 ** (level - 1)) < t < 1 - rat(1, 2 ** level)):
        level += 1
    return t + rat(1, 2 ** (level - 1)) + rat(1, 2 ** level) - 1


def vnk_level(t) -> int:
    t = rat(t)
    level = 1
    while not (1 - rat(1, 2 ** (level - 1)) < t < 1 - rat(1, 2 ** level)):
        level += 1
    return level


class Bits:
    """A binary sequence as a finite prefix plus repeating cycle."""

    __slots__ = ("prefix", "cycle")

    def __init__(self, prefix: Sequence[int], cycle: Sequence[int]):
        if not cycle:
            raise ValueError("cycle must be non-empty (use (0,) for terminating)")
        self.prefix = tuple(prefix)
        self.cycle = tuple(cycle)

    def head(self, n: int) -> Tuple[int, ...]:
        out = list(self.prefix[:n])
        i = 0
        while len(out) < n:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return tuple(out)

    def value(self) -> Rat:
        v = rat(0)
        for i, bit in enumerate(self.prefix, start=1):
            if bit:
                v += rat(1, 2 ** i)
        c = rat(0)
        m = len(self.cycle)
        for i, bit in enumerate(self.cycle, start=1):
            if bit:
                c += rat(1, 2 ** i)
        v += c * rat(1, 2 ** len(self.prefix)) * rat(2 ** m, 2 ** m - 1)
        return v

    def __eq__(self, other):
        return isinstance(other, Bits) and self.value() == other.value()

    def __repr__(self):
        p = "".join(map(str, self.prefix))
        c = "".join(map(str, self.cycle))
        return f"Bits(0.{p}({c}))"


def to_bits(t) -> Bits:
    """Binary expansion of a rational in (0,1) as prefix + cycle."""
    t = rat(t)
    if not (0 < t < 1):
        raise ValueError("t must be in (0,1)")
    p, q = int(t.numerator), int(t.denominator)
    seen = {}
    digits = []
    r = p
    while r and r not in seen:
        seen[r] = len(digits)
        r *= 2
        digits.append(r // q)
        r %= q
    if not r:
        return Bits(digits, (0,))
    k = seen[r]
    return Bits(digits[:k], digits[k:])


def odometer_step(bits: Bits) -> Bits:
    """Binary carry: (1,...,1,0,tail) -> (0,...,0,1,tail)."""
    for i, b in enumerate(bits.prefix):
        if b == 0:
            return Bits((0,) * i + (1,) + bits.prefix[i + 1:], bits.cycle)
    if all(b == 1 for b in bits.cycle):
        raise AllOnes("the all-ones sequence has no odometer successor")
    j = bits.cycle.index(0)
    prefix = bits.prefix + bits.cycle[: j + 1]
    flipped = (0,) * (len(bits.prefix) + j) + (1,)
    return Bits(flipped, bits.cycle[j + 1:] + bits.cycle[: j + 1])


# -- necktie ---------------------------------------------------------------------

# paper-coordinate labels for the necktie: square corners v0..v3 and kite
# corners w0..w3 located by their exact coordinates in the builtin table
_SQUARE_CORNERS = {(2, 2): "v0", (2, 0): "v1", (0, 0): "v2", (0, 2): "v3"}
_KITE_CORNERS = {(5, 2): "w0", (4, 2): "w1", (3, 0): "w2", (5, 1): "w3"}


def necktie_table() -> TablePair:
    return builtin("necktie")


def _locate_edge(T: TablePair, side: int, p_from, p_to) -> Tuple[int, bool]:
    """Edge index whose endpoints are the given coordinates, plus whether the
    stored orientation runs from p_from to p_to."""
    P = T.polys[side]
    a = (rat(p_from[0]), rat(p_from[1]))
    b = (rat(p_to[0]), rat(p_to[1]))
    for i in range(P.n):
        if P.vertices[i] == a and P.vertex(i + 1) == b:
            return i, True
        if P.vertices[i] == b and P.vertex(i + 1) == a:
            return i, False
    raise ValueError("edge not found")


def necktie_section_point(T: TablePair, t, square_side=( (2, 2), (2, 0) )) -> EdgePoint:
    """The square point (1-t) a + t b for a paper-labelled side (a, b)."""
    edge, forward = _locate_edge(T, MINUS, *square_side)
    return T.edge_point(MINUS, edge, rat(t) if forward else 1 - rat(t))


def _section_param(T: TablePair, ep: EdgePoint, square_side) -> Rat:
    edge, forward = _locate_edge(T, MINUS, *square_side)
    assert ep.edge == edge
    return ep.t if forward else 1 - ep.t


def necktie_return_map(x: EdgePoint, t, T: Optional[TablePair] = None,
                       atlas: Optional[BranchAtlas] = None,
                       square_side=((2, 2), (2, 0)),
                       max_steps: int = 4000) -> Tuple[Rat, int]:
    """First return of (x, (1-t)v0 + t v1) to the section; equals vnk(t).

    x must sit on a kite edge between w3w0 and w0w1; the return happens
    after exactly 4*level(t) billiard steps.
    """
    T = T or necktie_table()
    atlas = atlas or BranchAtlas(T)
    t = rat(t)
    if is_dyadic(t):
        raise DyadicSeed(f"{t} is dyadic and leaves the phase space")
    y = necktie_section_point(T, t, square_side)
    seed = PhasePair(x, y)
    traj, _ = iterate(T, seed, max_steps, atlas)
    pts = traj.points[traj.seed_index:]
    for k in range(2, len(pts) - 1, 2):
        if pts[k] == x and pts[k + 1].table == MINUS and pts[k + 1].edge == y.edge:
            return _section_param(T, pts[k + 1], square_side), k
    raise RuntimeError(f"no section return within {max_steps} steps")


@dataclass
class NecktieScanReport:
    seeds: int
    max_steps: int
    periodic_found: int
    reached_section: int
    vnk_agreements: int
    vnk_checked: int
    staircase_turnarounds: int
    vertex_stops: int


def necktie_no_period_scan(samples: int = 100, max_steps: int = 10000,
                           returns_per_seed: int = 8,
                           T: Optional[TablePair] = None,
                           atlas: Optional[BranchAtlas] = None) -> NecktieScanReport:
    """Sampled evidence for the necktie's emptiness of periodic orbits.

    For every seed: no exact state repetition within max_steps; the even
    (kite) trajectory reaches the section edges w3w0 or w0w1; successive
    section returns follow the von Neumann-Kakutani map exactly.
    """
    T = T or necktie_table()
    atlas = atlas or BranchAtlas(T)
    e01, _ = _locate_edge(T, PLUS, (5, 2), (4, 2))
    e30, _ = _locate_edge(T, PLUS, (5, 1), (5, 2))
    section_edges = {e01, e30}
    # the four section configurations of the first return map: the kite edge
    # of x paired with a non-parallel square side for y
    configs = (
        (e01, ((2, 2), (2, 0))),
        (e01, ((0, 0), (0, 2))),
        (e30, ((2, 0), (0, 0))),
        (e30, ((0, 2), (2, 2))),
    )
    periodic = 0
    reached = 0
    vertex_stops = 0
    vnk_ok = 0
    vnk_checked = 0
    turnarounds = 0
    for k in range(1, samples + 1):
        ex, side = configs[k % 4]
        x = EdgePoint(PLUS, ex, van_der_corput(k, 3))
        y = necktie_section_point(T, van_der_corput(k, 5), side)
        seed = PhasePair(x, y)
        period, kind, _ = scan_orbit(T, seed, max_steps, atlas)
        if kind == PERIODIC:
            periodic += 1
            continue
        if kind not in (BUDGET,):
            vertex_stops += 1
            continue
        probe_steps = min(max_steps, 2000)
        traj, _ = iterate(T, seed, probe_steps, atlas, backward=False)
        pts = traj.points[traj.seed_index:]
        evens = pts[::2]
        if any(p.edge in section_edges for p in evens):
            reached += 1
        moves = [sub(T.point(b), T.point(a)) for a, b in zip(evens, evens[1:])]
        for m1, m2 in zip(moves, moves[1:]):
            h1, h2 = m1[1] == 0, m2[1] == 0
            if h1 == h2:
                turnarounds += 1
    # section seeds: the return sequence must follow vnk exactly
    x = EdgePoint(PLUS, e01, rat(1, 3))
    for k in range(1, max(1, samples // 10) + 1):
        t = van_der_corput(k, 3)
        vnk_checked += 1
        ok = True
        cur = t
        for _ in range(returns_per_seed):
            t_engine, steps = necktie_return_map(x, cur, T, atlas)
            expected = vnk(cur)
            if t_engine != expected or steps != 4 * vnk_level(cur):
                ok = False
                break
            cur = t_engine
        vnk_ok += ok
    return NecktieScanReport(samples, max_steps, periodic, reached,
                             vnk_ok, vnk_checked, turnarounds, vertex_stops)
