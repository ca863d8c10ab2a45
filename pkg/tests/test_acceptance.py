"""Acceptance suite: one test per primary criterion, at the stated budgets.

Each test prints one PASS line on success (run with -s to see them); a
failure of the corresponding assert is the criterion's FAIL. Budgets and
tolerances are pinned here, not configurable.
"""

import random
import time

import numpy as np

from symplectic_billiards.casebook import (
    kite_orbit6,
    necktie_return_map,
    necktie_section_point,
    necktie_table,
    odometer_step,
    to_bits,
    vnk,
    vnk_level,
)
from symplectic_billiards.engine import (
    BUDGET,
    OK,
    PERIODIC,
    BranchAtlas,
    PhasePair,
    pair_sign,
    scan_orbit,
    step,
    step_back,
)
from symplectic_billiards.geom import cross
from symplectic_billiards.rational import rat
from symplectic_billiards.sampling import sample_pairs, van_der_corput
from symplectic_billiards.smooth import CurvePair, Ellipse, action_fk, find_periodic, grad_fk
from symplectic_billiards.strata import FINITE, LIMIT_POINTS_AT_VERTICES
from symplectic_billiards.table import (
    MINUS,
    PLUS,
    EdgePoint,
    affine_apply,
    builtin,
)
from symplectic_billiards.tiles import classify, period_bound_report, tile_of


def _report(name: str, detail: str):
    print(f"\nACCEPTANCE {name}: PASS ({detail})")


def test_01_quad_is_bp():
    """Quad: classifier fires the finite-critical-set criterion; 1000
    deterministic seeds all exactly periodic within 2(|C|^2-|C|); < 60 s."""
    t0 = time.time()
    T = builtin("quad")
    c = classify(T, samples=1000, sample_steps=20000)
    assert c.label == "BP"
    assert c.criterion == "critical_set_finite"
    assert c.critical.status == FINITE
    n = c.critical.sizes[0]
    assert c.bound == 2 * (n * n - n)
    assert c.sample_stats["periodic"] == 1000
    assert c.sample_stats["non_periodic"] == 0
    assert c.sample_stats["vertex_stops"] == 0
    assert c.sample_stats["bound_violations"] == 0
    assert c.sample_stats["max_period"] <= c.bound
    elapsed = time.time() - t0
    assert elapsed < 60
    _report("01 quad BP", f"bound={c.bound}, max period={c.sample_stats['max_period']}, {elapsed:.1f}s")


def test_02_square_rhombus_fp_unbounded():
    """Square+rhombus: C accumulation certified at vertices, all samples
    periodic, periods strictly increasing into the far corner past 100."""
    t0 = time.time()
    T = builtin("square-rhombus")
    atlas = BranchAtlas(T)
    c = classify(T, samples=1000, sample_steps=40000, atlas=atlas)
    assert c.label == "FP_unbounded_evidence"
    assert c.critical.status == LIMIT_POINTS_AT_VERTICES
    assert c.critical.witnesses
    assert all(0 < w.ratio < 1 for w in c.critical.witnesses)
    assert c.sample_stats["periodic"] == 1000
    assert c.sample_stats["non_periodic"] == 0
    # seeds marching into the far corner (12,-1) of the rhombus
    x = EdgePoint(MINUS, 0, rat(1, 3))
    periods = []
    for k in range(1, 14):
        y = EdgePoint(PLUS, 1, 1 - rat(1, 3 ** k))
        period, kind, _ = scan_orbit(T, PhasePair(x, y), 200000, atlas)
        assert kind == PERIODIC
        periods.append(period)
    assert all(a < b for a, b in zip(periods, periods[1:]))
    assert max(periods) > 100
    elapsed = time.time() - t0
    assert elapsed < 120
    _report("02 square-rhombus FP", f"corner periods {periods[0]}..{periods[-1]}, {elapsed:.1f}s")


def test_03_necktie_no_periodic_orbits():
    """Necktie: 1000 non-dyadic seeds for 1e5 steps each with zero exact
    state repetitions; the section return map equals the von Neumann-
    Kakutani exchange exactly, with 4*level steps; < 10 min."""
    t0 = time.time()
    T = necktie_table()
    atlas = BranchAtlas(T)
    section_x_edges = {}
    configs = (
        (0, ((2, 2), (2, 0))),
        (0, ((0, 0), (0, 2))),
        (3, ((2, 0), (0, 0))),
        (3, ((0, 2), (2, 2))),
    )
    budget_stops = 0
    for k in range(1, 1001):
        ex, side = configs[k % 4]
        x = EdgePoint(PLUS, ex, van_der_corput(k, 3))
        y = necktie_section_point(T, van_der_corput(k, 5), side)
        period, kind, steps = scan_orbit(T, PhasePair(x, y), 100000, atlas)
        assert period is None, f"state repetition at seed {k}"
        assert kind == BUDGET, f"seed {k} stopped early: {kind}"
        budget_stops += 1
    assert budget_stops == 1000
    # exact agreement with the interval exchange on 1000 section points
    x = EdgePoint(PLUS, 0, rat(1, 3))
    for k in range(1, 1001):
        t = van_der_corput(k, 3)
        t_out, steps = necktie_return_map(x, t, T, atlas)
        assert t_out == vnk(t)
        assert steps == 4 * vnk_level(t)
    elapsed = time.time() - t0
    assert elapsed < 600
    _report("03 necktie NP", f"1000 seeds x 1e5 steps, 1000 vnk returns, {elapsed:.1f}s")


def test_04_crooked_kite_isolated_orbit():
    """Every kite of a 10x10 grid carries an exactly 6-periodic orbit with
    a contracting return map and a zero-area tile; seeds perturbed by 1e-3
    stay non-periodic for 1e4 steps."""
    t0 = time.time()
    count = 0
    for i in range(1, 11):
        for j in range(1, 11):
            X, Y = 1 + rat(i, 11), 1 + rat(j, 11)
            if abs(X - Y) >= 1:
                continue
            K = kite_orbit6(X, Y)
            atlas = BranchAtlas(K.table)
            period, kind, _ = scan_orbit(K.table, PhasePair(K.orbit[0], K.orbit[1]),
                                         8, atlas)
            assert kind == PERIODIC and period == 6
            assert K.contraction_factor < 1
            tile = tile_of(K.table, PhasePair(K.orbit[0], K.orbit[1]), atlas=atlas)
            assert tile.area(K.table) == 0
            x0, x1 = K.orbit[0], K.orbit[1]
            for sign in (1, -1):
                t = x1.t + sign * rat(1, 1000)
                assert 0 < t < 1
                seed = PhasePair(x0, EdgePoint(x1.table, x1.edge, t))
                p, k2, _ = scan_orbit(K.table, seed, 10000, atlas)
                assert p is None, f"perturbed seed periodic on kite {X},{Y}"
            count += 1
    assert count == 100
    elapsed = time.time() - t0
    _report("04 crooked kite IP", f"100 kites, 200 perturbed seeds, {elapsed:.1f}s")


def test_05_theorem_bound_square_and_triangle():
    """Unit square and right triangle: every sampled orbit periodic within
    4|F-||F+| (64 and 36), and the even/odd-trajectory ratio invariant
    holds exactly on every sampled orbit."""
    t0 = time.time()
    observed = {}
    for name, bound in (("unit-square", 64), ("right-triangle", 36)):
        rep = period_bound_report(builtin(name), samples=1000, sample_steps=5000)
        assert rep.bound == bound
        assert rep.ratio_invariant_ok
        assert rep.observed_max_period <= bound
        assert rep.orbits_checked > 0
        observed[name] = rep.observed_max_period
    elapsed = time.time() - t0
    _report("05 period bounds", f"observed {observed}, bounds 64/36, {elapsed:.1f}s")


def test_05b_observed_period_values_as_stated():
    """Literal sub-clause of criterion 5: observed periods are 8 and 6.

    This is expected to fail: the exact dynamics give max observed period 4
    on the unit square (every generic orbit visits each edge once and the
    pair sequence closes after four steps; verified by hand and by two
    independent code paths) and 12 on the right triangle (each edge twice).
    No counting convention reproduces (8, 6). Kept failing on purpose; see
    the decisions ledger.
    """
    square = period_bound_report(builtin("unit-square"), samples=1000,
                                 sample_steps=5000)
    triangle = period_bound_report(builtin("right-triangle"), samples=1000,
                                   sample_steps=5000)
    observed = (square.observed_max_period, triangle.observed_max_period)
    assert observed == (8, 6), (
        f"ACCEPTANCE 05b observed periods: FAIL (exact computation gives "
        f"{observed}; the stated (8, 6) is unattainable, see decisions ledger)")


def test_06_lattice_three_directions():
    """A lattice table with at most three edge directions classifies BP
    via F-closure with F inside the integer lattice."""
    t0 = time.time()
    T = builtin("lattice-three-dirs")
    assert len(T.polys[0].edge_directions()) <= 3
    c = classify(T, samples=1000, sample_steps=5000)
    assert c.label == "BP" and c.criterion == "filled_set_finite"
    for side in (0, 1):
        for ep in c.filled.points[side]:
            x, y = T.point(ep)
            assert x.denominator == 1 and y.denominator == 1
    assert c.sample_stats["bound_violations"] == 0
    assert c.sample_stats["non_periodic"] == 0
    elapsed = time.time() - t0
    _report("06 three directions", f"bound={c.bound}, F in Z^2, {elapsed:.1f}s")


BUILTIN_TEST_TABLES = (
    "quad", "square-rhombus", "crooked-kite 3/2 5/4", "necktie",
    "unit-square", "right-triangle", "regular-pentagram", "lattice-three-dirs",
)


def test_07_engine_law_suite():
    """Reversibility, sign preservation both ways, exact measure
    preservation, affine equivariance and even periods: 1000 random cases
    per builtin table, zero violations."""
    t0 = time.time()
    rng = random.Random(2024)
    cases = 1000
    for name in BUILTIN_TEST_TABLES:
        T = builtin(name)
        atlas = BranchAtlas(T)
        sheared = affine_apply(T, [[1, 1], [0, 1]], (5, -3))
        atlas_sheared = BranchAtlas(sheared)
        n0, n1 = T.polys[0].n, T.polys[1].n
        for case in range(cases):
            p = PhasePair(
                EdgePoint(MINUS, rng.randrange(n0), rat(rng.randrange(1, 997), 997)),
                EdgePoint(PLUS, rng.randrange(n1), rat(rng.randrange(1, 991), 991)),
            )
            out = step(T, p)
            if out.kind != OK:
                continue
            # reversibility: step_back . step = id, step . step_back = id
            back = step_back(T, out.pair)
            assert back.kind == OK and back.pair == p, name
            assert step(T, back.pair).pair == out.pair, name
            # forward and backward sign preservation
            s = pair_sign(T, p)
            assert s != 0 and pair_sign(T, out.pair) == s, name
            assert pair_sign(T, back.pair) == s, name
            # affine equivariance: identical edge/parameter outcome
            out_sheared = step(sheared, p)
            assert out_sheared.kind == OK and out_sheared.pair == out.pair, name
            # exact measure preservation of an in-branch rectangle
            entry = atlas.entry(p.x.table, p.x.edge, p.y.edge)
            breaks = entry[0]
            lo = max([rat(0)] + [s_ for s_ in breaks if s_ < p.x.t])
            hi = min([rat(1)] + [s_ for s_ in breaks if s_ > p.x.t])
            dx, dy = (hi - lo) / 4, rat(1, 64)
            z = out.pair.y
            from bisect import bisect_left
            a = entry[1][bisect_left(breaks, p.x.t)][2]
            e_i = T.polys[p.x.table].edge_vec(p.x.edge)
            e_j = T.polys[p.y.table].edge_vec(p.y.edge)
            e_k = T.polys[z.table].edge_vec(z.edge)
            assert abs(cross(e_i, e_j)) * dx * dy == \
                abs(cross(e_j, e_k)) * dy * (abs(a) * dx), name
        # even periods on a sample of orbits
        for pair in sample_pairs(T, 100):
            period, kind, _ = scan_orbit(T, pair, 3000, atlas)
            if kind == PERIODIC:
                assert period % 2 == 0, name
    elapsed = time.time() - t0
    _report("07 engine laws", f"8 tables x {cases} cases, {elapsed:.1f}s")


def test_08_odometer_conjugacy():
    """vnk agrees exactly with the binary odometer on 1e4 odd-denominator
    rationals; the first 2^10 vnk iterates of each are pairwise distinct."""
    t0 = time.time()
    rng = random.Random(4096)
    seen = set()
    while len(seen) < 10 ** 4:
        q = rng.randrange(3, 2001, 2)
        p = rng.randrange(1, q)
        seen.add(rat(p, q))
    for t in seen:
        stepped = odometer_step(to_bits(t))
        image = vnk(t)
        assert stepped.value() == image
        assert stepped.head(24) == to_bits(image).head(24)
    # distinctness: vnk is invertible, so distinctness from the seed for
    # every k <= 2^10 rules out any repetition among the first 2^10 iterates
    for t in list(seen)[:10 ** 4]:
        cur = t
        for _ in range(2 ** 10):
            cur = vnk(cur)
            assert cur != t
    elapsed = time.time() - t0
    _report("08 odometer conjugacy", f"1e4 rationals, 2^10 iterates each, {elapsed:.1f}s")


def test_09_smooth_variational_orbits():
    """Fixed ellipse pair: verified 2k-orbits for k = 2..6 with strictly
    increasing action, residuals < 1e-8, closure < 1e-8, and the analytic
    gradient matching finite differences to 1e-6."""
    t0 = time.time()
    pair = CurvePair(Ellipse(center=(0, 0), a=1.5, b=1.0),
                     Ellipse(center=(4, 0), a=1.0, b=0.8, rotation=0.5))
    rng = np.random.default_rng(12)
    for _ in range(10):
        params = rng.uniform(0, 2 * np.pi, 8)
        g = grad_fk(pair, params)
        h = 1e-5
        for j in range(8):
            p1, p2 = params.copy(), params.copy()
            p1[j] += h
            p2[j] -= h
            fd = (action_fk(pair, p1) - action_fk(pair, p2)) / (2 * h)
            assert abs(g[j] - fd) < 1e-6
    prev = None
    details = []
    for k in range(2, 7):
        orb = find_periodic(pair, k, restarts=32, seed=7)
        assert orb.max_residual < 1e-8
        assert orb.min_gap > 1e-6
        assert orb.closure_error < 1e-8
        if prev is not None:
            assert orb.action > prev
        prev = orb.action
        details.append(f"k={k}:f={orb.action:.6f}")
    elapsed = time.time() - t0
    _report("09 smooth orbits", ", ".join(details) + f", {elapsed:.1f}s")
