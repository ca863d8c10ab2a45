"""Smooth strictly convex pairs always carry 2k-periodic orbits.

Maximizing the cyclic action sum of cross(z_i, z_{i+1}) over alternating
tuples gives a critical configuration with no backtracking; the maximal
action strictly grows with k, so every even length at least 4 occurs.
"""

from symplectic_billiards.render import render_smooth_orbit
from symplectic_billiards.smooth import CurvePair, Ellipse, RadialFourier, find_periodic

pair = CurvePair(
    Ellipse(center=(0, 0), a=1.5, b=1.0),
    RadialFourier(0.9, cos_coeffs=(0.04,), sin_coeffs=(0.0, 0.03), center=(3.4, 0)),
)

prev = None
for k in range(2, 7):
    orbit = find_periodic(pair, k, restarts=16, seed=3)
    marker = "" if orbit.cover_of is None else f"  (covers the {orbit.cover_of}-orbit)"
    print(f"k={k}: action {orbit.action:.8f}, residual {orbit.max_residual:.1e}, "
          f"closure {orbit.closure_error:.1e}{marker}")
    if prev is not None:
        assert orbit.action > prev
    prev = orbit.action
    if k == 3:
        with open("smooth_orbit_k3.svg", "w") as fh:
            fh.write(render_smooth_orbit(pair, orbit))
        print("   wrote smooth_orbit_k3.svg")
