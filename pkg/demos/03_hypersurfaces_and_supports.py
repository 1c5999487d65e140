"""Congruence varieties as unions of rational cones, stratum by stratum.

The support of Bend(f) keeps, per stratum, the Gamma-admissible cells where
the maximum is attained twice; slicing at height 1 recovers the classical
variety, at height 0 the Boolean one.  The final section reproduces the
tropical-basis counterexample family and the isolated point the displayed
intersection of the three quadrics misses.
"""

from fractions import Fraction as F

from tropcong import ExtPoint, ToricContext, parse_poly
from tropcong import polyhedra as ph
from tropcong.variety import (hypersurface, intersect_supports, point_in_variety,
                              slice_at_height)

ctx = ToricContext.affine(2)
f = parse_poly(ctx, "x^2 + t^1*x*y + y^2 + x^2*y^2")
V = hypersurface(f)
print("Support of Bend(%s):" % f)
for s in V.strata:
    print("  stratum tau with rays %s: %d cells"
          % ([tuple(map(int, r)) for r in s.tau.rays], len(s.cells)))
print("The deep ray survives whole (every term dies there), the two")
print("coordinate-ray strata are empty (a single surviving term cannot bend).")

ctx3 = ToricContext.affine(3)
gens = {n: parse_poly(ctx3, s) for n, s in (
    ("g_xy", "1 + x^2 + y^2 + z^2 + t^1*x*y"),
    ("g_xz", "1 + x^2 + y^2 + z^2 + t^1*x*z"),
    ("g_yz", "1 + x^2 + y^2 + z^2 + t^1*y*z"))}
dense = [ctx3.dense_face]
triple = intersect_supports([hypersurface(g, strata=dense) for g in gens.values()])
slice1 = slice_at_height(triple, ctx3.dense_face, 1)
print("\nDense height-1 slice of V(g_xy) cap V(g_xz) cap V(g_yz): %d pieces"
      % len(slice1))
for p in slice1:
    print("   rows:", [("%s.x %s %s" % (tuple(map(int, r.a)), r.rel, r.b)) for r in p.rows])

w = ExtPoint.dense(ctx3, 1, (F(-1, 2), F(-1, 2), F(-1, 2)))
print("\nThe isolated piece is the point (-1/2,-1/2,-1/2), where the three")
print("coefficient-bearing terms tie with the constant term:")
for n, g in gens.items():
    print("  %s vanishes there:" % n, point_in_variety(hypersurface(g), w))
f1 = parse_poly(ctx3, "1 + x + y + z")
print("  f_1 vanishes there:", point_in_variety(hypersurface(f1), w),
      " -- so the three quadrics are not quite a tropical basis")

wB = ExtPoint.dense(ctx3, 0, (1, 1, 0))
print("\nBoolean witness (1,1,0) is in every single generator's variety:")
for n, g in list(gens.items()) + [("f_1", f1)]:
    assert point_in_variety(hypersurface(g), wB)
print("  yes -- but not in the three-piece variety of the whole ideal,")
print("  which is the no-finite-tropical-basis phenomenon.")
