"""Symplectic billiards for pairs of smooth strictly convex curves.

Unlike the polygonal kernel this module is numerical: curves are smooth,
so points are found by root bracketing and periodic orbits by maximizing
the action f_k(z_1..z_2k) = sum of cross(z_i, z_i+1) over alternating
tuples. Critical points of f_k with no backtracking are exactly the
2k-periodic orbits; maxima never backtrack, which is how orbits of every
even length >= 4 are found.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq, root

TWO_PI = 2.0 * np.pi


class ParallelTangents(ValueError):
    pass


class RootFindFailure(RuntimeError):
    pass


class NotConverged(RuntimeError):
    pass


class NotStrictlyConvex(ValueError):
    pass


@dataclass
class Ellipse:
    center: Tuple[float, float] = (0.0, 0.0)
    a: float = 1.0
    b: float = 1.0
    rotation: float = 0.0

    def __post_init__(self):
        c, s = np.cos(self.rotation), np.sin(self.rotation)
        self._rot = np.array([[c, -s], [s, c]])
        self._c = np.asarray(self.center, dtype=float)

    def point(self, theta):
        theta = np.asarray(theta, dtype=float)
        local = np.stack([self.a * np.cos(theta), self.b * np.sin(theta)], axis=-1)
        return local @ self._rot.T + self._c

    def tangent(self, theta):
        theta = np.asarray(theta, dtype=float)
        local = np.stack([-self.a * np.sin(theta), self.b * np.cos(theta)], axis=-1)
        return local @ self._rot.T

    def second(self, theta):
        theta = np.asarray(theta, dtype=float)
        local = np.stack([-self.a * np.cos(theta), -self.b * np.sin(theta)], axis=-1)
        return local @ self._rot.T


@dataclass
class RadialFourier:
    """r(theta) = c0 + sum a_k cos(k theta) + b_k sin(k theta), around center."""

    c0: float
    cos_coeffs: Tuple[float, ...] = ()
    sin_coeffs: Tuple[float, ...] = ()
    center: Tuple[float, float] = (0.0, 0.0)

    def _r(self, theta, order: int = 0):
        theta = np.asarray(theta, dtype=float)
        out = np.full_like(theta, self.c0 if order == 0 else 0.0)
        for k, c in enumerate(self.cos_coeffs, start=1):
            if order == 0:
                out = out + c * np.cos(k * theta)
            elif order == 1:
                out = out - c * k * np.sin(k * theta)
            else:
                out = out - c * k * k * np.cos(k * theta)
        for k, c in enumerate(self.sin_coeffs, start=1):
            if order == 0:
                out = out + c * np.sin(k * theta)
            elif order == 1:
                out = out + c * k * np.cos(k * theta)
            else:
                out = out - c * k * k * np.sin(k * theta)
        return out

    def point(self, theta):
        theta = np.asarray(theta, dtype=float)
        r = self._r(theta)
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1) \
            + np.asarray(self.center)

    def tangent(self, theta):
        theta = np.asarray(theta, dtype=float)
        r, dr = self._r(theta), self._r(theta, 1)
        return np.stack([dr * np.cos(theta) - r * np.sin(theta),
                         dr * np.sin(theta) + r * np.cos(theta)], axis=-1)

    def second(self, theta):
        theta = np.asarray(theta, dtype=float)
        r, dr, ddr = self._r(theta), self._r(theta, 1), self._r(theta, 2)
        return np.stack([ddr * np.cos(theta) - 2 * dr * np.sin(theta) - r * np.cos(theta),
                         ddr * np.sin(theta) + 2 * dr * np.cos(theta) - r * np.sin(theta)],
                        axis=-1)


def check_strictly_convex(curve, samples: int = 2048, min_curvature: float = 1e-9):
    theta = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    d1 = curve.tangent(theta)
    d2 = curve.second(theta)
    speed = np.linalg.norm(d1, axis=-1)
    kappa = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speed ** 3
    if not np.all(kappa > min_curvature):
        raise NotStrictlyConvex(f"min curvature {kappa.min():.3e} on the sample grid")
    return float(kappa.min())


@dataclass
class CurvePair:
    minus: object
    plus: object

    def __post_init__(self):
        check_strictly_convex(self.minus)
        check_strictly_convex(self.plus)

    def curve(self, side: int):
        return self.minus if side == 0 else self.plus


def _cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def smooth_step(pair: CurvePair, side: int, theta0: float, theta1: float,
                tol: float = 1e-12) -> float:
    """The second intersection of curve(side) with the line through
    point(theta0) parallel to the tangent at theta1 on the other curve."""
    ca = pair.curve(side)
    cb = pair.curve(1 - side)
    p0 = ca.point(theta0)
    d = cb.tangent(theta1)
    d = d / np.linalg.norm(d)
    t0 = ca.tangent(theta0)
    if abs(_cross(t0 / np.linalg.norm(t0), d)) < 1e-12:
        raise ParallelTangents("tangents at x0 and x1 are parallel")

    def g(theta):
        return float(_cross(d, ca.point(theta) - p0))

    n = 512
    grid = (theta0 + np.linspace(0.0, TWO_PI, n, endpoint=False)) % TWO_PI
    vals = _cross(d, ca.point(grid) - p0)
    roots = []
    for i in range(n):
        a, b = grid[i], grid[(i + 1) % n]
        va, vb = vals[i], vals[(i + 1) % n]
        if va == 0.0:
            roots.append(float(a))
            continue
        if va * vb < 0.0:
            bb = b if b > a else b + TWO_PI
            roots.append(float(brentq(g, float(a), float(bb), xtol=tol)))
    roots = [r % TWO_PI for r in roots]
    away = [r for r in roots
            if _angdist(r, theta0) > 1e-7]
    if not away:
        raise RootFindFailure("no second intersection found")
    # strict convexity gives exactly one other root; keep the best-separated
    away.sort(key=lambda r: -_angdist(r, theta0))
    return away[0]


def _angdist(a, b):
    d = abs((a - b) % TWO_PI)
    return min(d, TWO_PI - d)


# -- the action and its gradient -----------------------------------------------


def _orbit_points(pair: CurvePair, params, start_side: int = 0):
    pts = np.empty((len(params), 2))
    tans = np.empty((len(params), 2))
    for j, th in enumerate(params):
        c = pair.curve((start_side + j) % 2)
        pts[j] = c.point(th)
        tans[j] = c.tangent(th)
    return pts, tans


def action_fk(pair: CurvePair, params, start_side: int = 0) -> float:
    """f_k = sum of cross(z_i, z_{i+1}) cyclically over alternating points."""
    pts, _ = _orbit_points(pair, params, start_side)
    nxt = np.roll(pts, -1, axis=0)
    return float(np.sum(_cross(pts, nxt)))


def grad_fk(pair: CurvePair, params, start_side: int = 0):
    pts, tans = _orbit_points(pair, params, start_side)
    nxt = np.roll(pts, -1, axis=0)
    prv = np.roll(pts, 1, axis=0)
    return _cross(tans, nxt - prv)


@dataclass
class SmoothOrbit:
    k: int
    start_side: int
    params: np.ndarray  # 2k curve parameters, alternating curves
    action: float
    residuals: np.ndarray  # tangency defect per point, normalized
    max_residual: float
    min_gap: float  # min |z_{j+1} - z_{j-1}|, no-backtracking margin
    closure_error: float
    cover_of: Optional[int] = None  # p if the orbit is a k/p-fold cover


def verify_critical(pair: CurvePair, params, start_side: int = 0):
    """Per-point normalized tangency residuals and the backtracking margin."""
    pts, tans = _orbit_points(pair, params, start_side)
    nxt = np.roll(pts, -1, axis=0)
    prv = np.roll(pts, 1, axis=0)
    u = nxt - prv
    gaps = np.linalg.norm(u, axis=-1)
    tn = np.linalg.norm(tans, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        res = np.abs(_cross(tans, u)) / (tn * np.where(gaps > 0, gaps, 1.0))
    res = np.where(gaps > 0, res, np.inf)
    return res, float(np.min(gaps))


def _closure_error(pair: CurvePair, params, start_side: int) -> float:
    n = len(params)
    th0, th1 = float(params[0]), float(params[1])
    pts_expected, _ = _orbit_points(pair, params, start_side)
    cur = (th0, th1)
    side = start_side
    worst = 0.0
    for j in range(n):
        th2 = smooth_step(pair, side, cur[0], cur[1])
        p2 = pair.curve(side).point(th2)
        expect = pts_expected[(j + 2) % n]
        worst = max(worst, float(np.linalg.norm(p2 - expect)))
        cur = (cur[1], th2)
        side = 1 - side
    return worst


def _detect_cover(params, k: int, tol: float = 1e-9) -> Optional[int]:
    n = 2 * k
    for p in range(1, k):
        if k % p:
            continue
        shift = 2 * p
        diff = np.abs((params - np.roll(params, -shift) + np.pi) % TWO_PI - np.pi)
        if np.max(diff) < tol:
            return p
    return None


def find_periodic(pair: CurvePair, k: int, restarts: int = 32,
                  start_side: int = 0, seed: int = 0,
                  residual_tol: float = 1e-8, gap_tol: float = 1e-6,
                  max_iter: int = 20000) -> SmoothOrbit:
    """Search for a 2k-periodic orbit by maximizing the action f_k.

    Projected gradient ascent on the 2k-torus of curve parameters with
    seeded random restarts; the best critical tuple must pass the tangency,
    no-backtracking and step-closure verifications.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    rng = np.random.default_rng(seed)
    best: Optional[SmoothOrbit] = None
    for trial in range(restarts):
        if trial == 0:
            params = (np.arange(2 * k) * TWO_PI / (2 * k) +
                      np.array([0.0, TWO_PI / (4 * k)] * k))
        else:
            params = rng.uniform(0.0, TWO_PI, size=2 * k)
        params = _ascend(pair, params, start_side, max_iter)
        params = _polish(pair, params, start_side)
        res, min_gap = verify_critical(pair, params, start_side)
        if np.max(res) > residual_tol or min_gap < gap_tol:
            continue
        f = action_fk(pair, params, start_side)
        if best is None or f > best.action:
            closure = _closure_error(pair, params, start_side)
            if closure > residual_tol:
                continue
            best = SmoothOrbit(
                k=k, start_side=start_side, params=params, action=f,
                residuals=res, max_residual=float(np.max(res)),
                min_gap=min_gap, closure_error=closure,
                cover_of=_detect_cover(params, k),
            )
    if best is None:
        raise NotConverged(f"no verified 2k-orbit after {restarts} restarts (k={k})")
    return best


def _polish(pair: CurvePair, params, start_side: int):
    """Newton-polish the ascent result on the critical equations grad = 0.

    The ascent converges linearly; the root solve finishes the last digits
    so that re-stepping the orbit closes to near machine precision."""
    sol = root(lambda p: grad_fk(pair, p, start_side), params, method="hybr",
               options={"xtol": 1e-13})
    cand = sol.x % TWO_PI
    # keep the polish only if it stayed at the same critical point and
    # actually sharpened the gradient (hybr reports failure at the noise
    # floor, so judge by the result, not by sol.success)
    moved = np.max(np.abs((cand - params + np.pi) % TWO_PI - np.pi))
    if moved > 1e-3:
        return params
    before = np.max(np.abs(grad_fk(pair, params, start_side)))
    after = np.max(np.abs(grad_fk(pair, cand, start_side)))
    return cand if after <= before else params


def _ascend(pair: CurvePair, params, start_side: int, max_iter: int):
    params = np.array(params, dtype=float)
    eta = 0.05
    f = action_fk(pair, params, start_side)
    for _ in range(max_iter):
        g = grad_fk(pair, params, start_side)
        gnorm = float(np.max(np.abs(g)))
        if gnorm < 1e-14:
            break
        while eta > 1e-18:
            cand = (params + eta * g) % TWO_PI
            fc = action_fk(pair, cand, start_side)
            if fc > f:
                params, f = cand, fc
                eta *= 1.3
                break
            eta *= 0.5
        else:
            break
    return params
