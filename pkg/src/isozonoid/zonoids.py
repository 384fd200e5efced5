"""L_p zonoids of even measures, their polars, and the companion body M_p.

For an even measure mu on S^{n-1} not concentrated on a great subsphere:

    h_{Z_p(mu)}(v) = ( sum_i c_i |<u_i, v>|^p )^{1/p},      p in [1, inf)
    Z_inf(mu)      = conv supp mu,
    Z*_p(mu)       = polar of Z_p(mu),

so the gauge of Z*_p is available in closed form (it equals h_{Z_p}),
while Z*_inf = { x : <x, u> <= 1 on supp mu } is an exact polytope.
Z_1 is a classical zonotope: the Minkowski sum of the weighted atom
segments, with an exact minor-expansion volume.

M_p(mu) = { sum c_i theta_i u_i : sum c_i |theta_i|^p <= 1 } is handled
through its defining infimum (a small convex program per gauge call);
Hoelder gives M_p(mu) subset Z_{p*}(mu) with 1/p + 1/p* = 1, which the
test-suite checks as a two-route consistency statement.

The closed-form polar volumes for the cross measure,

    V(Z*_p(nu_n)) = 2^n Gamma(1+1/p)^n / Gamma(1+n/p),

are reproduced both by body volumes and by the exponential-integral route
V(K) = Gamma(1+n/p)^{-1} int exp(-||x||_K^p) dx.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog, minimize

from .bodies import (BodyRep, VolumeResult, polar_of_vrep, unit_ball_volume,
                     volume, zonotope_vertices, zonotope_volume)
from .errors import DegenerateMeasureError, DimensionUnsupportedError, NonConvergedError
from .measures import AtomicMeasure


def _require_full_dimensional(mu: AtomicMeasure):
    if np.linalg.matrix_rank(mu.directions, tol=1e-10) < mu.dim:
        raise DegenerateMeasureError("support lies in a great subsphere")


def _check_pz(p) -> float:
    p = float(p)
    if not p >= 1.0:
        raise ValueError("p must lie in [1, inf]")
    return p


def support_Zp(mu: AtomicMeasure, p, v):
    """Support function of Z_p(mu) at v (vectorized over rows of v)."""
    p = _check_pz(p)
    _require_full_dimensional(mu)
    v = np.asarray(v, dtype=float)
    single = v.ndim == 1
    V = np.atleast_2d(v)
    dots = V @ mu.directions.T
    if np.isinf(p):
        out = np.max(dots, axis=1)
    else:
        out = (np.abs(dots) ** p @ mu.weights) ** (1.0 / p)
    return float(out[0]) if single else out


def norm_Zp_star(mu: AtomicMeasure, p, x):
    """Gauge ||x||_{Z*_p(mu)}; for even mu the p = inf case is max |<x, u_i>|."""
    p = _check_pz(p)
    _require_full_dimensional(mu)
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    dots = X @ mu.directions.T
    if np.isinf(p):
        out = np.max(np.abs(dots), axis=1)
    else:
        out = (np.abs(dots) ** p @ mu.weights) ** (1.0 / p)
    return float(out[0]) if single else out


def _antipodal_pair_generators(mu: AtomicMeasure):
    """One zonotope generator 2 c_j u_j per antipodal atom pair."""
    from .measures import _pair_indices

    pair_of = _pair_indices(mu.directions)
    reps = sorted(set(min(i, j) for i, j in pair_of.items()))
    return 2.0 * mu.weights[reps, None] * mu.directions[reps]


def zp_touch_point(mu: AtomicMeasure, p, v):
    """Boundary point of Z_p(mu) with outer normal v (gradient of h), p in (1, inf)."""
    p = _check_pz(p)
    v = np.asarray(v, dtype=float)
    single = v.ndim == 1
    V = np.atleast_2d(v)
    dots = V @ mu.directions.T
    h = (np.abs(dots) ** p @ mu.weights) ** (1.0 / p)
    coef = mu.weights * np.abs(dots) ** (p - 1.0) * np.sign(dots)
    pts = (coef @ mu.directions) * h[:, None] ** (1.0 - p)
    return pts[0] if single else pts


def body_Zp(mu: AtomicMeasure, p) -> BodyRep:
    """Z_p(mu): exact polytope for p in {1, inf}, support oracle otherwise."""
    p = _check_pz(p)
    _require_full_dimensional(mu)
    if np.isinf(p):
        return BodyRep.from_vertices(mu.directions)
    if p == 1.0 and mu.even:
        G = _antipodal_pair_generators(mu)
        if len(G) <= 16 and mu.dim <= 4:
            return BodyRep.from_vertices(zonotope_vertices(G))
    fn = lambda v: support_Zp(mu, p, v)
    touch = (lambda v: zp_touch_point(mu, p, v)) if p > 1.0 else None
    return BodyRep.from_support(mu.dim, fn, touch_fn=touch, rng_check=False)


def body_Zp_star(mu: AtomicMeasure, p) -> BodyRep:
    """Z*_p(mu): exact polytope for p = inf (and p = 1 in n <= 3), gauge oracle otherwise."""
    p = _check_pz(p)
    _require_full_dimensional(mu)
    if np.isinf(p):
        return BodyRep.from_halfspaces(mu.directions, np.ones(mu.natoms),
                                       check_bounded=False)
    if p == 1.0 and mu.even and mu.dim <= 3:
        zono = body_Zp(mu, 1.0)
        if zono.kind == "V":
            return polar_of_vrep(zono.vertices)
    return BodyRep.from_gauge(mu.dim, lambda x: norm_Zp_star(mu, p, x))


# ---------------------------------------------------------------------------
# the auxiliary body M_p


def mp_gauge(mu: AtomicMeasure, p, x) -> float:
    """||x||_{M_p} via the representation infimum.

    Minimizes sum c_i |theta_i|^p over representations x = sum c_i theta_i u_i
    (a linear program for p = 1, a smooth convex program for p in (1, inf)).
    The returned value can only overestimate the true gauge, so points scaled
    by it land inside M_p.
    """
    p = _check_pz(p)
    if np.isinf(p):
        raise ValueError("use mp_body for p = inf (zonotope)")
    x = np.asarray(x, dtype=float)
    U, c = mu.directions, mu.weights
    k = mu.natoms
    A = (U * c[:, None]).T                          # x = A theta
    if p == 1.0:
        cost = np.concatenate([c, c])
        Aeq = np.hstack([A, -A])
        res = linprog(cost, A_eq=Aeq, b_eq=x, bounds=(0, None), method="highs")
        if not res.success:
            raise NonConvergedError("M_1 gauge LP failed")
        return float(res.fun)
    theta0, *_ = np.linalg.lstsq(A, x, rcond=None)

    def obj(th):
        return float(np.sum(c * np.abs(th) ** p))

    def grad(th):
        return p * c * np.abs(th) ** (p - 1.0) * np.sign(th)

    res = minimize(obj, theta0, jac=grad, method="SLSQP",
                   constraints=[{"type": "eq", "fun": lambda th: A @ th - x,
                                 "jac": lambda th: A}],
                   options={"maxiter": 300, "ftol": 1e-14})
    feas = float(np.linalg.norm(A @ res.x - x))
    if feas > 1e-8 * (1.0 + float(np.linalg.norm(x))):
        raise NonConvergedError(f"M_p gauge solve infeasible by {feas:.2e}")
    return float(obj(res.x)) ** (1.0 / p)


def mp_body(mu: AtomicMeasure, p) -> BodyRep:
    """M_p(mu): zonotope for p = inf, representation-gauge oracle for finite p."""
    p = _check_pz(p)
    _require_full_dimensional(mu)
    if np.isinf(p):
        G = mu.weights[:, None] * mu.directions
        if len(G) <= 20 and mu.dim <= 4:
            return BodyRep.from_vertices(zonotope_vertices(G))
        fn = lambda v: float(np.sum(np.abs(np.atleast_2d(v) @ G.T), axis=1)[0])
        return BodyRep.from_support(mu.dim, fn, rng_check=False)
    return BodyRep.from_gauge(mu.dim, lambda x: mp_gauge(mu, p, x))


# ---------------------------------------------------------------------------
# volumes


def volume_Zp(mu: AtomicMeasure, p, **kw) -> VolumeResult:
    body = body_Zp(mu, p)
    if p == 1.0 and mu.even:
        # minor-expansion oracle, independent of the hull code
        G = _antipodal_pair_generators(mu)
        v = zonotope_volume(G)
        return VolumeResult(v, 1e-12 * v, "EXACT")
    return volume(body, **kw)


def volume_Zp_star(mu: AtomicMeasure, p, **kw) -> VolumeResult:
    return volume(body_Zp_star(mu, p), **kw)


def volume_Zp_star_ball_integral(mu: AtomicMeasure, p, nodes: int = None,
                                 target: float = None) -> VolumeResult:
    """V(Z*_p) = Gamma(1+n/p)^{-1} int exp(-sum c_i |<x,u_i>|^p) dx.

    Tensor Gauss-Legendre on [-L, L]^n with L from the isotropy decay bound
    sum c_i |<x,u_i>|^p >= min(1, n^{1-p/2}) ||x||^p; the error bar is the
    difference between consecutive grid resolutions.  Raises NonConverged
    when a requested target is missed.
    """
    p = _check_pz(p)
    if np.isinf(p):
        raise ValueError("ball integral needs finite p")
    _require_full_dimensional(mu)
    n = mu.dim
    if n > 3:
        raise DimensionUnsupportedError("ball integral implemented for n <= 3")
    decay = min(1.0, float(n) ** (1.0 - p / 2.0))
    L = (46.0 / decay) ** (1.0 / p)
    if nodes is None:
        nodes = 160 if n == 2 else 100
    coarser = _exp_integral(mu, p, L, int(nodes * 0.55))
    coarse = _exp_integral(mu, p, L, int(nodes * 0.75))
    fine = _exp_integral(mu, p, L, nodes)
    gam = math.gamma(1.0 + n / p)
    value = fine / gam
    # two successive refinement gaps guard against flukily small last steps
    err = (abs(fine - coarse) + abs(coarse - coarser)) / gam + 1e-12 * value
    if target is not None and err > target:
        raise NonConvergedError(f"ball integral error {err:.2e} misses {target:.2e}")
    return VolumeResult(value, err, "QUADRATURE")


def _axis_nodes(L, half_nodes, gamma=6.0):
    """Symmetric 1-D nodes on [-L, L], split at 0 and exponentially
    concentrated near the origin (where the integrand lives)."""
    u, wu = np.polynomial.legendre.leggauss(half_nodes)
    u = (u + 1.0) / 2.0
    wu = wu / 2.0
    scale = L / (math.exp(gamma) - 1.0)
    x = scale * (np.exp(gamma * u) - 1.0)
    w = wu * scale * gamma * np.exp(gamma * u)
    return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])


def _exp_integral(mu, p, L, nodes):
    x, w = _axis_nodes(L, nodes)
    U, c = mu.directions, mu.weights
    n = mu.dim
    if n == 2:
        X, Y = np.meshgrid(x, x, indexing="ij")
        P = np.stack([X.ravel(), Y.ravel()], axis=1)
        vals = np.exp(-(np.abs(P @ U.T) ** p) @ c)
        W = np.outer(w, w).ravel()
        return float(vals @ W)
    total = 0.0
    Wxy = np.outer(w, w).ravel()
    X, Y = np.meshgrid(x, x, indexing="ij")
    base = np.stack([X.ravel(), Y.ravel()], axis=1)
    for zi, wz in zip(x, w):
        P = np.hstack([base, np.full((len(base), 1), zi)])
        vals = np.exp(-(np.abs(P @ U.T) ** p) @ c)
        total += wz * float(vals @ Wxy)
    return total


def reference_volume(kind: str, n: int, p) -> float:
    """Extremal (cross measure) volumes.

    Z_STAR: the closed form 2^n Gamma(1+1/p)^n / Gamma(1+n/p), 2^n at p=inf.
    Z: exact values for p in {1, 2, inf}; other p from the definition via
    body_Zp of the cross measure (the printed closed form for finite p is
    inconsistent with both known anchors and is not used).
    """
    p = _check_pz(p)
    kind = kind.upper()
    if kind in ("Z_STAR", "ZSTAR", "Z*"):
        if np.isinf(p):
            return 2.0 ** n
        return 2.0 ** n * math.gamma(1.0 + 1.0 / p) ** n / math.gamma(1.0 + n / p)
    if kind != "Z":
        raise ValueError("kind must be Z or Z_STAR")
    if np.isinf(p):
        return 2.0 ** n / math.factorial(n)
    if p == 1.0:
        return 2.0 ** n
    if p == 2.0:
        return unit_ball_volume(n)
    from .measures import cross_measure

    return volume_Zp(cross_measure(n), p).value
