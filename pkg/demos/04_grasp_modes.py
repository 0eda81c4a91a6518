"""Grasp-mode proxies for a pair of opposing morphed fingertips.

Cross-section reasoning at desk scale: a convex pinch leaves the object
free to pivot, a concave pair seats a cylinder with four contacts and a
centering potential well, and a square seated on four facets is fully
form-closed without friction.

Run: python3 demos/04_grasp_modes.py
"""

import math

import numpy as np

from morphtip import (
    Circle,
    Concave,
    Convex,
    ConvexPolygon,
    FingertipConfig,
    Flat,
    closure_classify,
    cradle_height,
    find_contacts,
    pivot_feasible,
    plan_primitive,
    scene_between,
)

cfg = FingertipConfig()
l_oc = cfg.linkage.l_oc


def profile(prim):
    return plan_primitive(cfg, prim).profile_x


def report(name, contacts, mu):
    print(f"\n--- {name} (mu = {mu}) ---")
    for c in contacts:
        print(f"  {c.side:>5} segment {c.segment}: point ({c.point[0]:8.3f}, "
              f"{c.point[1]:8.3f}), normal ({c.normal[0]:6.3f}, {c.normal[1]:6.3f})")
    if contacts:
        print(f"  pivot feasible: {pivot_feasible(contacts)}   "
              f"closure: {closure_classify(contacts, mu).value}")


print("=" * 70)
print("1. CONVEX PINCH: small-patch contact, free pivoting")
print("=" * 70)
conv = profile(Convex(math.radians(-30.0)))
r = 8.0
scene = scene_between(conv, conv, 2 * r, Circle(r, (r, 3.0)), 0.0)
cts = find_contacts(scene)
report("convex pinch of a light cylinder", cts, 0.0)
print("  Frictionless antipodal contacts resist no torque about the pinch")
print("  line, which is exactly what pivoting needs; friction closes it:")
print(f"  closure at mu=0.5: {closure_classify(cts, 0.5).value}")

print()
print("=" * 70)
print("2. CONCAVE SEAT: envelopment with four contacts and a potential well")
print("=" * 70)
phi = math.radians(20.0)
conc = profile(Concave(phi))
r = 88.0
gap = 2.0 * (r - l_oc * math.sin(phi)) / math.cos(phi)
scene = scene_between(conc, conc, gap, Circle(r, (gap / 2.0, 0.0)), 0.5)
cts = find_contacts(scene)
report("cylinder seated in concave pair", cts, 0.5)

print("\n  cradle landscape h(u) of one concave profile (surface up):")
us = np.linspace(-2.0, 2.0, 9)
hs = [cradle_height(conc, r, float(u)) for u in us]
h0 = hs[4]
print("   u  : " + " ".join(f"{u:7.2f}" for u in us))
print("   dh : " + " ".join(f"{h - h0:7.4f}" for h in hs))
print("  Strict minimum at u = 0: the groove re-centers a misplaced object.")

flat = profile(Flat())
print("\n  same landscape on a flat fingertip (no centering):")
print("   dh : " + " ".join(
    f"{cradle_height(flat, 10.0, float(u)) - 10.0:7.4f}" for u in us))

print()
print("=" * 70)
print("3. SQUARE IN CONCAVE PAIR: frictionless form closure")
print("=" * 70)
phi = math.radians(30.0)
conc30 = profile(Concave(phi))
a = 20.0
half_gap = a + (a - l_oc) * math.tan(phi)
square = ConvexPolygon(np.array([
    [half_gap - a, -a], [half_gap + a, -a], [half_gap + a, a], [half_gap - a, a],
]))
scene = scene_between(conc30, conc30, 2 * half_gap, square, 0.0)
cts = find_contacts(scene)
report("square with corners on the four facets", cts, 0.0)
print("  Four off-center corner contacts immobilize the square outright.")
print("  (At 45-degree facets every normal passes through the center and")
print("  first-order closure degenerates; 30 degrees avoids that.)")
