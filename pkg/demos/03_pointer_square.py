"""Trace the pointer-rod tip over the tilt configuration space.

A rod along the terrace normal visualizes the attainable tilts: stepping
the two pairs through +/-psi_max visits eight extreme poses whose tip
positions outline a near-square in the horizontal plane.

Run: python3 demos/03_pointer_square.py
"""

import math

from morphtip import FingertipConfig, attainable_tilt_range, pointer_top

cfg = FingertipConfig(rod_len=100.0)

lo, hi = attainable_tilt_range(cfg.linkage)
print(f"attainable pair tilt: {math.degrees(lo):.3f} .. {math.degrees(hi):.3f} deg")

psi = math.radians(5.0)
poses = [
    ("+x edge", (psi, 0.0)), ("corner", (psi, psi)),
    ("+y edge", (0.0, psi)), ("corner", (-psi, psi)),
    ("-x edge", (-psi, 0.0)), ("corner", (-psi, -psi)),
    ("-y edge", (0.0, -psi)), ("corner", (psi, -psi)),
]

print(f"\neight poses at psi_max = 5 deg, rod {cfg.rod_len:.0f} mm:")
print(f"{'pose':<10} {'psi_x':>7} {'psi_y':>7} {'x':>9} {'y':>9} {'z':>9}")
for name, (px, py) in poses:
    x, y, z = pointer_top(cfg, px, py)
    print(f"{name:<10} {math.degrees(px):6.1f}d {math.degrees(py):6.1f}d "
          f"{x:9.4f} {y:9.4f} {z:9.4f}")

sin5, cos5 = math.sin(psi), math.cos(psi)
print("\nfirst-order square: half-width rod*sin(psi) =", f"{100*sin5:.4f} mm;")
print("exact corners sit at (rod*cos*sin, rod*sin) =",
      f"({100*cos5*sin5:.4f}, {100*sin5:.4f}) mm,")
print("so the loop is a near-square, squashed by cos(psi) along one axis.")
print("\nThe same loop with interpolation: morphtip trace-pointer --psi-max 5")
