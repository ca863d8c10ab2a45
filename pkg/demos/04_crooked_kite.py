"""Crooked kites: an isolated periodic orbit of period six.

Two inscribed triangles with edges parallel to the slanted sides pin the
orbit exactly; the first-return map on the section through it contracts,
so the orbit's tile is a single point and nearby orbits never close.
"""

from symplectic_billiards import BranchAtlas, PhasePair, scan_orbit, tile_of
from symplectic_billiards.casebook import kite_isolation_check, kite_orbit6
from symplectic_billiards.rational import rat, rat_str
from symplectic_billiards.render import render_table_with_orbit

K = kite_orbit6(rat(3, 2), rat(5, 4))
print("kite X=3/2 Y=5/4: s0 =", K.s0, " t0 =", K.t0)
print("orbit points:")
for p in K.orbit:
    x, y = K.table.point(p)
    print("   ", rat_str(x), rat_str(y))
print("section return slope:", K.contraction_factor)

report = kite_isolation_check(K)
print("tile area:", report.tile_area)
print(f"perturbed seeds periodic: {report.perturbed_periodic}/{report.perturbed_checked}")

with open("kite_orbit.svg", "w") as fh:
    fh.write(render_table_with_orbit(K.table, K.orbit + K.orbit[:2]))
print("wrote kite_orbit.svg")

print("across the family:")
for X, Y in ((rat(6, 5), rat(7, 5)), (rat(9, 5), rat(8, 5)), (rat(3, 2), rat(5, 4))):
    K = kite_orbit6(X, Y)
    print(f"   X={X} Y={Y}: contraction {K.contraction_factor}")
