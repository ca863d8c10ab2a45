import random

import pytest

from symplectic_billiards.engine import (
    BUDGET,
    HITS_VERTEX,
    NO_UNIQUE_CHORD,
    OK,
    PARALLEL_EDGES,
    PERIODIC,
    Y_IS_VERTEX,
    BranchAtlas,
    PhasePair,
    UnrealizableBranch,
    affine_step_coeffs,
    continuations_at_vertex,
    iterate,
    pair_sign,
    scan_orbit,
    step,
    step_back,
)
from symplectic_billiards.geom import cross
from symplectic_billiards.rational import rat
from symplectic_billiards.table import (
    MINUS,
    PLUS,
    EdgePoint,
    EdgeRef,
    builtin,
    validate_table,
)


def rand_pair(T, rng, den_a=997, den_b=991):
    return PhasePair(
        EdgePoint(MINUS, rng.randrange(T.polys[0].n), rat(rng.randrange(1, den_a), den_a)),
        EdgePoint(PLUS, rng.randrange(T.polys[1].n), rat(rng.randrange(1, den_b), den_b)),
    )


def test_step_axis_aligned_square():
    T = builtin("unit-square")
    out = step(T, PhasePair(T.edge_point(MINUS, 0, rat(1, 4)),
                            T.edge_point(PLUS, 1, rat(1, 2))))
    assert out.kind == OK
    assert T.point(out.pair.y) == (rat(1, 4), rat(1))


def test_step_parallel_edges():
    T = builtin("unit-square")
    out = step(T, PhasePair(T.edge_point(MINUS, 0, rat(1, 4)),
                            T.edge_point(PLUS, 2, rat(1, 2))))
    assert out.kind == PARALLEL_EDGES


def test_step_y_vertex():
    T = builtin("unit-square")
    out = step(T, PhasePair(T.edge_point(MINUS, 0, rat(1, 4)),
                            T.vertex_point(PLUS, 1)))
    assert out.kind == Y_IS_VERTEX


def test_step_rejects_same_table_pair():
    T = builtin("necktie")
    with pytest.raises(ValueError):
        step(T, PhasePair(T.edge_point(MINUS, 0, rat(1, 3)),
                          T.edge_point(MINUS, 1, rat(1, 3))))


def test_reversibility_on_quad():
    T = builtin("quad")
    rng = random.Random(3)
    checked = 0
    for _ in range(100):
        p = rand_pair(T, rng)
        out = step(T, p)
        if out.kind != OK:
            continue
        back = step_back(T, out.pair)
        assert back.kind == OK and back.pair == p
        fwd = step(T, back.pair)
        assert fwd.pair == out.pair
        checked += 1
    assert checked > 50


def test_sign_preservation():
    tables = ["quad", "square-rhombus", "necktie", "unit-square", "right-triangle"]
    rng = random.Random(17)
    for name in tables:
        T = builtin(name)
        for _ in range(200):
            p = rand_pair(T, rng)
            s = pair_sign(T, p)
            out = step(T, p)
            if out.kind != OK:
                continue
            assert pair_sign(T, out.pair) == s != 0


def test_vertex_hit_square_corner_to_corner():
    # a partner table provides the diagonal direction; the chord from the
    # square's corner then runs into the opposite corner
    T = validate_table([(0, 0), (1, 0), (1, 1), (0, 1)],
                       [(5, 0), (6, 1), (4, 1)])
    # plus edge 0 runs (5,0)->(6,1): direction (1,1)
    assert T.polys[PLUS].edge_vec(0) == (rat(1), rat(1))
    out = step(T, PhasePair(T.vertex_point(MINUS, 0), T.edge_point(PLUS, 0, rat(1, 2))))
    assert out.kind == HITS_VERTEX
    assert T.point(out.vertex) == (rat(1), rat(1))


def test_reflex_vertex_two_continuations():
    # L-shaped hexagon with a partner edge parallel to (1,-1): both chords
    # from the reflex corner are interior
    T = validate_table([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
                       [(5, 0), (6, -1), (6, 0)])
    reflex = T.vertex_point(MINUS, 3)
    assert T.point(reflex) == (rat(1), rat(1))
    assert T.polys[PLUS].edge_vec(0) == (rat(1), rat(-1))
    pair = PhasePair(reflex, T.edge_point(PLUS, 0, rat(1, 2)))
    conts = continuations_at_vertex(T, pair)
    assert len(conts) == 2
    out = step(T, pair)
    assert out.kind == NO_UNIQUE_CHORD and len(out.candidates) == 2


def test_non_convex_merge_breaks_reversibility():
    # two distinct non-vertex states map onto the same reflex-vertex pair;
    # stepping from the merged configuration is ambiguous, so the map is
    # not reversible at a non-convex vertex
    T = validate_table([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
                       [(5, 0), (7, -1), (7, 0)])  # partner edge dir (2,-1)
    y = T.edge_point(PLUS, 0, rat(1, 2))
    x1 = T.edge_point(MINUS, 5, rat(1, 4))  # (0, 3/2) on the left edge
    x2 = T.edge_point(MINUS, 1, rat(1, 2))  # (2, 1/2) on the right edge
    assert T.point(x1) == (rat(0), rat(3, 2))
    assert T.point(x2) == (rat(2), rat(1, 2))
    out1 = step(T, PhasePair(x1, y))
    out2 = step(T, PhasePair(x2, y))
    assert out1.kind == HITS_VERTEX and out2.kind == HITS_VERTEX
    assert T.point(out1.vertex) == T.point(out2.vertex) == (rat(1), rat(1))
    assert out1.pair == out2.pair  # the merge
    merged = out1.pair  # (y, z) with z the reflex vertex
    back_query = step(T, PhasePair(merged.y, merged.x))
    assert back_query.kind == NO_UNIQUE_CHORD
    assert len(back_query.candidates) == 2


def test_convex_vertex_single_continuation_is_ok():
    T = builtin("quad")
    pair = PhasePair(T.vertex_point(MINUS, 1), T.edge_point(PLUS, 2, rat(1, 3)))
    conts = continuations_at_vertex(T, pair)
    if len(conts) == 1:
        out = step(T, pair)
        assert out.kind in (OK, HITS_VERTEX)


def test_iterate_quad_periodic_and_even():
    T = builtin("quad")
    atlas = BranchAtlas(T)
    rng = random.Random(29)
    for _ in range(100):
        p = rand_pair(T, rng)
        period, kind, _ = scan_orbit(T, p, 5000, atlas)
        if kind == PARALLEL_EDGES:
            continue
        assert kind == PERIODIC
        assert period % 2 == 0
        assert period <= 144  # 2(|C|^2-|C|) with |C| = 9


def test_iterate_necktie_budget():
    T = builtin("necktie")
    atlas = BranchAtlas(T)
    p = PhasePair(T.edge_point(MINUS, 2, rat(1, 3)), T.edge_point(PLUS, 1, rat(1, 7)))
    period, kind, steps = scan_orbit(T, p, 50000, atlas)
    assert period is None and kind == BUDGET and steps == 50000


def test_iterate_records_trajectory():
    T = builtin("unit-square")
    seed = PhasePair(T.edge_point(MINUS, 0, rat(1, 4)), T.edge_point(PLUS, 1, rat(1, 2)))
    traj, sym = iterate(T, seed, 100)
    assert traj.period == 4
    assert len(traj.points) == len(sym.symbols)
    assert traj.points[0] == seed.x and traj.points[1] == seed.y
    # consecutive points satisfy the step relation exactly
    for k in range(len(traj.points) - 2):
        out = step(T, PhasePair(traj.points[k], traj.points[k + 1]))
        assert out.pair[1] == traj.points[k + 2]


def test_single_table_classical_three_orbit_doubles():
    # the right triangle's midpoint orbit visits three points classically;
    # the two-table encoding closes after six steps
    T = builtin("right-triangle")
    seed = PhasePair(T.edge_point(MINUS, 0, rat(1, 2)), T.edge_point(PLUS, 1, rat(1, 2)))
    traj, _ = iterate(T, seed, 100)
    assert traj.period == 6
    coords = [T.point(p) for p in traj.points[:6]]
    assert len(set(coords)) == 3  # three geometric points, each tagged twice


def test_iterate_backward_collects_points():
    T = builtin("necktie")
    seed = PhasePair(T.edge_point(MINUS, 2, rat(1, 3)), T.edge_point(PLUS, 1, rat(1, 7)))
    traj, _ = iterate(T, seed, 50)
    assert traj.seed_index > 0  # backward points were prepended
    for k in range(len(traj.points) - 2):
        out = step(T, PhasePair(traj.points[k], traj.points[k + 1]))
        assert out.pair is not None and out.pair[1] == traj.points[k + 2]


def test_affine_step_coeffs_unit_square():
    T = builtin("unit-square")
    a, b = affine_step_coeffs(T, EdgeRef(MINUS, 0), EdgeRef(PLUS, 1), EdgeRef(MINUS, 2))
    assert a == -1  # parallel opposite edges transfer isometrically
    with pytest.raises(UnrealizableBranch):
        affine_step_coeffs(T, EdgeRef(MINUS, 0), EdgeRef(PLUS, 1), EdgeRef(MINUS, 1))
    with pytest.raises(UnrealizableBranch):
        affine_step_coeffs(T, EdgeRef(MINUS, 0), EdgeRef(PLUS, 2), EdgeRef(MINUS, 2))


def test_affine_step_coeffs_two_point_fit_oracle():
    # a must match the slope measured from two exact step evaluations
    T = builtin("quad")
    atlas = BranchAtlas(T)
    rng = random.Random(41)
    checked = 0
    while checked < 30:
        p = rand_pair(T, rng)
        out = step(T, p)
        if out.kind != OK:
            continue
        s1, z1 = p.x.t, out.pair.y
        p2 = PhasePair(EdgePoint(p.x.table, p.x.edge, s1 + rat(1, 10 ** 6)), p.y)
        out2 = step(T, p2)
        if out2.kind != OK or out2.pair.y.edge != z1.edge:
            continue
        slope = (out2.pair.y.t - z1.t) / (p2.x.t - s1)
        a, b = affine_step_coeffs(T, EdgeRef(p.x.table, p.x.edge),
                                  EdgeRef(p.y.table, p.y.edge),
                                  EdgeRef(z1.table, z1.edge), atlas)
        assert a == slope
        assert b == z1.t - a * s1
        checked += 1


def test_measure_preservation_exact():
    # mu(R) = |det(e_i, e_j)| dx dy is preserved by the branch maps
    for name in ("quad", "square-rhombus"):
        T = builtin(name)
        atlas = BranchAtlas(T)
        rng = random.Random(47)
        checked = 0
        while checked < 50:
            p = rand_pair(T, rng, den_a=211, den_b=223)
            entry = atlas.entry(p.x.table, p.x.edge, p.y.edge)
            if entry is None:
                continue
            out = step(T, p)
            if out.kind != OK:
                continue
            # a small rectangle strictly inside the current branch
            breaks = entry[0]
            lo = max([rat(0)] + [s for s in breaks if s < p.x.t])
            hi = min([rat(1)] + [s for s in breaks if s > p.x.t])
            dx = min((hi - lo) / 4, rat(1, 100))
            dy = rat(1, 100)
            e_i = T.polys[p.x.table].edge_vec(p.x.edge)
            e_j = T.polys[p.y.table].edge_vec(p.y.edge)
            z = out.pair.y
            e_k = T.polys[z.table].edge_vec(z.edge)
            a, _ = affine_step_coeffs(T, EdgeRef(p.x.table, p.x.edge),
                                      EdgeRef(p.y.table, p.y.edge),
                                      EdgeRef(z.table, z.edge), atlas)
            mu = abs(cross(e_i, e_j)) * dx * dy
            mu_image = abs(cross(e_j, e_k)) * dy * (abs(a) * dx)
            assert mu == mu_image
            checked += 1
