#!/usr/bin/env python3
"""The determinant inequality for identity decompositions and its
self-improving stability factor theta*.

For vectors with sum v_i (x) v_i = Id and positive t_i:
    det(sum t_i v_i (x) v_i) >= theta* prod t_i^{<v_i, v_i>},  theta* >= 1,
with theta* > 1 exactly when the Cauchy-Binet subset weights disagree.
"""

import numpy as np

from isozonoid.ballbarthe import (DecompositionSystem, ball_inequality,
                                  random_decomposition_system,
                                  subset_expansion, theta_star, xab_gap)

print("=" * 70)
print("1. Cauchy-Binet expansion on the hexagonal decomposition")
print("=" * 70)
ang = np.arange(3) * np.pi / 3
U = np.stack([np.cos(ang), np.sin(ang)], axis=1)
sys_ = DecompositionSystem.from_isotropic(U, np.full(3, 2.0 / 3.0))
t = np.array([1.0, 2.0, 3.0])
det, t0, terms = subset_expansion(sys_, t)
print(f"det(sum t_i v_i v_i^T)    = {det:.12f}")
print(f"sum of subset minors      = {sum(terms.values()):.12f}")
print(f"t_0 = sqrt(sum)           = {t0:.12f}")
for S, val in terms.items():
    print(f"  subset {S}: {val:.6f}")

print()
print("=" * 70)
print("2. Ball's inequality and the strengthened form")
print("=" * 70)
lhs, rhs, ok = ball_inequality(sys_, t)
theta, strong = theta_star(sys_, t)
print(f"det = {lhs:.6f}  >=  prod t^<v,v> = {rhs:.6f}        [{ok}]")
print(f"det = {lhs:.6f}  >=  theta* x prod = {theta * rhs:.6f}  "
      f"(theta* = {theta:.6f})  [{strong}]")
print("equal weights collapse theta* to 1:",
      f"{theta_star(sys_, np.full(3, 1.7))[0]:.12f}")

print()
print("=" * 70)
print("3. Random sweep: 200 systems, n in {2,3}")
print("=" * 70)
rng = np.random.default_rng(0x5EED)
worst_gap = np.inf
top_theta = 1.0
for _ in range(200):
    n = int(rng.integers(2, 4))
    s = random_decomposition_system(n, int(rng.integers(2, 4)), rng)
    tt = np.exp(rng.normal(size=s.k))
    theta, okk = theta_star(s, tt)
    assert okk
    lhs, rhs, _ = ball_inequality(s, tt)
    worst_gap = min(worst_gap, lhs / (theta * rhs))
    top_theta = max(top_theta, theta)
print(f"all passed; min det/(theta* prod) = {worst_gap:.6f} (>= 1),")
print(f"largest stability factor seen: theta* = {top_theta:.4f}")

print()
print("=" * 70)
print("4. The scalar gap inequality behind the theta* lower bound")
print("=" * 70)
for (a, b, x) in ((2.0, 1.0, 0.5), (1.0, 1.0, 3.0), (5.0, 0.2, 0.9)):
    lhs, rhs, ok = xab_gap(a, b, x)
    print(f"(xa-1)^2+(xb-1)^2 = {lhs:8.4f} >= {rhs:8.4f}  [{ok}]")
