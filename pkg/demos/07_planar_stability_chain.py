#!/usr/bin/env python3
"""The planar stability chain with explicit constants.

A symmetric planar body normalized so its maximum-area inscribed
parallelogram is the square W^2 is sandwiched between polygons Q and M
with exact perimeter/area formulas in t = (t_1 + t_2)/2:

    S(M) = (1 + (sqrt(2)-1) t) S(W^2),    V(Q) = (1 + t) V(W^2),

and the isoperimetric deficit eps controls the distance:
t <= 18 eps, hence delta_BM <= 18 eps and delta_vol <= 3t <= 54 eps.
"""

import numpy as np

from isozonoid.harness import octagon_Q_body, planar_suite
from isozonoid.measures import equiangular_measure
from isozonoid.harness import s1_sharp_suite

print("=" * 70)
print("1. Octagon family sweep")
print("=" * 70)
print(f"{'t':>5} {'S(M)':>10} {'V(Q)':>8} {'deficit':>9} {'18 eps':>8} "
      f"{'t<=18eps':>9}")
for t in np.arange(0.0, 0.5001, 0.05):
    r = planar_suite(octagon_Q_body(t, t))
    print(f"{r.extra['t']:>5.2f} {r.extra['S_M']:>10.6f} "
          f"{r.extra['V_Q']:>8.4f} {r.epsilon:>9.5f} "
          f"{18 * r.epsilon:>8.4f} {str(r.passed):>9}")
print("\n(identity residuals are at the 1e-16 level; the t shown for the")
print(" last rows re-normalizes onto the larger inscribed square)")

print()
print("=" * 70)
print("2. Sharp circle constants: the p = inf  stability on S^1")
print("=" * 70)
print(f"{'measure':>12} {'eps=d_HO':>9} {'V(Z_inf)':>9} {'>=':>10} "
      f"{'V(Z*_inf)':>10} {'<=':>9}")
for m in (2, 3, 4, 6, 8):
    rep = s1_sharp_suite([equiangular_measure(m)])[0]
    print(f"{'2m=' + str(2 * m):>12} {rep.epsilon:>9.5f} "
          f"{rep.extra['V_Zinf']:>9.5f} {rep.extra['bound_inf']:>10.5f} "
          f"{rep.extra['V_Zinf_star']:>10.5f} {rep.extra['bound_star']:>9.5f}")
print("\n(equality only for the cross 2m = 4; every other support obeys the")
print(" linear-in-eps improvements (1 + eps/4) and (1 - eps/10))")
