"""The necktie: a polygon pair without any periodic orbit.

Every orbit funnels through a section on the kite's short edges, and the
first-return map there is the von Neumann-Kakutani interval exchange --
the binary odometer in disguise. Adding one in binary has no periodic
points, so neither has the necktie.
"""

from symplectic_billiards import BranchAtlas, PhasePair, scan_orbit
from symplectic_billiards.casebook import (
    necktie_no_period_scan,
    necktie_return_map,
    necktie_table,
    odometer_step,
    to_bits,
    vnk,
    vnk_level,
)
from symplectic_billiards.rational import rat
from symplectic_billiards.table import PLUS, EdgePoint

T = necktie_table()
atlas = BranchAtlas(T)
x = EdgePoint(PLUS, 0, rat(1, 3))

print("section return map vs interval exchange:")
t = rat(1, 3)
for _ in range(6):
    t_next, steps = necktie_return_map(x, t, T, atlas)
    bits = to_bits(t)
    print(f"   t={t} (level {vnk_level(t)}, bits {bits}) -> {t_next} in {steps} steps")
    assert t_next == vnk(t) == odometer_step(bits).value()
    t = t_next

print("scan:")
rep = necktie_no_period_scan(samples=60, max_steps=20000)
print(f"   periodic found: {rep.periodic_found}/{rep.seeds}")
print(f"   reached the section: {rep.reached_section}/{rep.seeds}")
print(f"   staircase turnarounds: {rep.staircase_turnarounds}")
