"""Distances between sphere measures, point sets, and convex bodies.

Transport distance: for equal-mass atomic measures the Kantorovich LP with
geodesic-angle cost is solved exactly; by duality its value equals the
Lipschitz-1 supremum form.  Orbit-minimized variants (distance to the
nearest rotated cross measure) exploit that the support of a cross measure
is invariant under sign flips of frame vectors, so the O(n) orbit equals
the SO(n) orbit: rotations suffice.

Hausdorff distance on the sphere is the standard symmetric max of the two
one-sided max-min deviations; the one-sided minimum form is also exposed
(``form="min"``) for comparison, but every consumer here uses the max form.

Body distances (Banach-Mazur, volume difference) are certified upper
bounds obtained by multistart Nelder-Mead over a normalized GL(n) family;
global optimality over GL(n) is out of desk scope and never claimed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize

from .bodies import BodyRep, hull_volume_area, halfspace_vertices
from .errors import (EmptySetError, HypothesisFailedError, MassMismatchError)
from .measures import AtomicMeasure, cross_measure, sphere_angle

MASS_TOL = 1e-9
EPS = 1e-12


def angle_matrix(U, W) -> np.ndarray:
    """Pairwise geodesic angles, chord-stable near 0 and pi."""
    U = np.atleast_2d(U)
    W = np.atleast_2d(W)
    diff = np.linalg.norm(U[:, None, :] - W[None, :, :], axis=2)
    summ = np.linalg.norm(U[:, None, :] + W[None, :, :], axis=2)
    near = 2.0 * np.arcsin(np.minimum(diff / 2.0, 1.0))
    far = np.pi - 2.0 * np.arcsin(np.minimum(summ / 2.0, 1.0))
    dots = U @ W.T
    return np.where(dots >= 0.0, near, far)


# ---------------------------------------------------------------------------
# Wasserstein


@dataclass(frozen=True)
class TransportPlan:
    source_idx: np.ndarray
    target_idx: np.ndarray
    flows: np.ndarray
    cost: float

    def check_marginals(self, c, d, tol=1e-10) -> bool:
        k, l = len(c), len(d)
        out = np.zeros(k)
        np.add.at(out, self.source_idx, self.flows)
        inn = np.zeros(l)
        np.add.at(inn, self.target_idx, self.flows)
        return bool(np.max(np.abs(out - c)) <= tol
                    and np.max(np.abs(inn - d)) <= tol)


def wasserstein(mu: AtomicMeasure, nu: AtomicMeasure):
    """Exact min-cost transport with cost(u, w) = angle(u, w).

    Requires equal total mass (within 1e-9).  Returns (value, plan).
    """
    if mu.dim != nu.dim:
        raise ValueError("dimension mismatch")
    c, d = mu.weights, nu.weights
    if abs(c.sum() - d.sum()) > MASS_TOL:
        raise MassMismatchError(f"masses {c.sum()} vs {d.sum()}")
    C = angle_matrix(mu.directions, nu.directions)
    k, l = C.shape
    A_eq = np.zeros((k + l, k * l))
    for i in range(k):
        A_eq[i, i * l:(i + 1) * l] = 1.0
    for j in range(l):
        A_eq[k + j, j::l] = 1.0
    b_eq = np.concatenate([c, d])
    res = linprog(C.ravel(), A_eq=A_eq, b_eq=b_eq, bounds=(0, None),
                  method="highs")
    if not res.success:
        raise MassMismatchError(f"transport LP failed: {res.message}")
    x = res.x.reshape(k, l)
    ii, jj = np.nonzero(x > 1e-14)
    plan = TransportPlan(source_idx=ii, target_idx=jj, flows=x[ii, jj],
                         cost=float(res.fun))
    return float(res.fun), plan


def _rotation_2d(phi):
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def rotated_cross_measure(n, R) -> AtomicMeasure:
    """Cross measure on the frame given by the rows of R (R orthogonal)."""
    return cross_measure(n, frame=np.asarray(R, dtype=float))


def wasserstein_to_cross(mu: AtomicMeasure):
    """delta_WO(mu, nu_n): minimum transport cost to a rotated cross measure.

    n = 2: the LP value is piecewise linear and concave in the rotation
    angle between cost kinks, so the exact minimum sits at a kink; all kink
    candidates (atom angles mod pi/2) are enumerated.  n = 3: multistart
    local descent over rotation vectors from 60 quasi-uniform starts.
    Returns (value, rotation_matrix, certificate).
    """
    n = mu.dim
    if abs(mu.total_mass - n) > 1e-6:
        raise MassMismatchError("delta_WO needs total mass n")
    if n == 2:
        thetas = np.arctan2(mu.directions[:, 1], mu.directions[:, 0])
        cands = np.unique(np.concatenate([thetas % (np.pi / 2), [0.0]]))
        cands = np.unique(np.concatenate([cands, cands + np.pi / 4]))  # safety midpoints
        best = (np.inf, None)
        for phi in cands:
            frame = _rotation_2d(phi % (np.pi / 2)).T   # rows at angles phi, phi+pi/2
            val, _ = wasserstein(mu, rotated_cross_measure(2, frame))
            if val < best[0]:
                best = (val, frame)
        cert = {"method": "kink-enumeration", "candidates": len(cands)}
        return best[0], best[1], cert
    if n == 3:
        return _orbit_minimize_3d(
            lambda R: wasserstein(mu, rotated_cross_measure(3, R))[0])
    raise ValueError("orbit search implemented for n in {2, 3}")


def _rotvec_matrix(w):
    from scipy.spatial.transform import Rotation

    return Rotation.from_rotvec(w).as_matrix()


def _orbit_start_points():
    """60 quasi-uniform rotation vectors: 20 Fibonacci axes x 3 angles."""
    starts = [np.zeros(3)]
    golden = np.pi * (3.0 - math.sqrt(5.0))
    for i in range(20):
        z = 1.0 - (2.0 * i + 1.0) / 20.0
        r = math.sqrt(max(1.0 - z * z, 0.0))
        th = golden * i
        axis = np.array([r * math.cos(th), r * math.sin(th), z])
        for ang in (np.pi / 4, np.pi / 2, 3 * np.pi / 4):
            starts.append(axis * ang)
    return starts


def _orbit_minimize_3d(objective):
    best = (np.inf, None, None)
    for idx, w0 in enumerate(_orbit_start_points()):
        res = minimize(lambda w: objective(_rotvec_matrix(w)), w0,
                       method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400})
        if res.fun < best[0]:
            best = (float(res.fun), _rotvec_matrix(res.x), idx)
    cert = {"method": "multistart-nelder-mead", "starts": 61,
            "best_start": best[2]}
    return best[0], best[1], cert


# ---------------------------------------------------------------------------
# spherical Hausdorff


def hausdorff_spherical(X, Y, form: str = "max") -> float:
    """Hausdorff distance between finite subsets of the sphere.

    ``form="max"`` is the standard symmetric distance; ``form="min"`` takes
    the smaller one-sided deviation instead (reported for comparison only).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if len(X) == 0 or len(Y) == 0:
        raise EmptySetError("hausdorff distance of an empty set")
    D = angle_matrix(X, Y)
    one = float(np.max(np.min(D, axis=1)))
    two = float(np.max(np.min(D, axis=0)))
    if form == "max":
        return max(one, two)
    if form == "min":
        return min(one, two)
    raise ValueError("form must be 'max' or 'min'")


def _cross_support(n, R=None):
    E = np.eye(n) if R is None else np.asarray(R, dtype=float)
    return np.vstack([E, -E])


def _golden_min(f, lo, hi, iters=90):
    """Fixed-iteration golden section; no relative-tolerance floor, so it
    resolves kinks of piecewise-linear objectives to ~1e-13."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if b - a < 1e-14:
            break
    x = 0.5 * (a + b)
    return x, f(x)


def hausdorff_to_cross(X, form: str = "max"):
    """delta_HO(X, supp nu_n): orbit-minimized Hausdorff distance.

    n = 2: dense angle grid plus golden-section refinement (the objective
    is piecewise linear with slopes +-1, so the refined kink is exact to
    tolerance).  n = 3: multistart Nelder-Mead.  Returns (value, frame,
    certificate).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if len(X) == 0:
        raise EmptySetError("empty support")
    n = X.shape[1]
    if n == 2:
        def f(phi):
            return hausdorff_spherical(X, _cross_support(2, _rotation_2d(phi).T),
                                       form=form)

        grid = np.linspace(0.0, np.pi / 2, 4097)[:-1]
        vals = np.array([f(p) for p in grid])
        i = int(np.argmin(vals))
        h = np.pi / 2 / 4096
        phi, best = _golden_min(f, grid[i] - 2 * h, grid[i] + 2 * h)
        if vals[i] < best:
            phi, best = float(grid[i]), float(vals[i])
        cert = {"method": "grid+golden", "grid": 4096, "xatol": 1e-13}
        return best, _rotation_2d(phi).T, cert
    if n == 3:
        val, R, cert = _orbit_minimize_3d(
            lambda R_: hausdorff_spherical(X, _cross_support(3, R_), form=form))
        return val, R, cert
    raise ValueError("orbit search implemented for n in {2, 3}")


def wasserstein_hausdorff_bound(mu: AtomicMeasure, nu: AtomicMeasure,
                                omega: float = None):
    """Check delta_W(mu, nu) <= 2n delta_H(supp mu, supp nu) for a cross nu.

    With an explicit cap-complement mass ``omega`` the general bound
    2n delta + 2 pi n^2 omega is asserted instead (delta then only needs to
    cover the caps carrying mass 1 - omega).  Returns a result dict.
    """
    from .measures import require_isotropic

    require_isotropic(mu, 1e-8)
    n = mu.dim
    dH = hausdorff_spherical(mu.directions, nu.directions)
    if omega is None:
        if dH >= np.pi / 4:
            raise HypothesisFailedError("needs delta_H < pi/4")
        bound = 2.0 * n * dH
    else:
        bound = 2.0 * n * dH + 2.0 * np.pi * n * n * omega
    dW, _ = wasserstein(mu, nu)
    return {"delta_W": dW, "delta_H": dH, "bound": bound,
            "passed": dW <= bound + 1e-9}


# ---------------------------------------------------------------------------
# deep holes and cross-frame fitting


def _affine_foot(P):
    """Nearest point to the origin in the affine hull of the rows of P."""
    base = P[0]
    if len(P) == 1:
        return base.copy()
    D = P[1:] - base
    a, *_ = np.linalg.lstsq(D.T, -base, rcond=None)
    return base + D.T @ a


def deep_hole(U, t: float):
    """Point far from all +-u_i when two of them are non-orthogonal.

    Hypotheses: t in (0, 1/(2 * 4^{n-2} sqrt((n-1)!))) and some pair with
    |<u_i, u_j>| >= sin t.  The returned u satisfies
    |<u_i, u>| <= 1/sqrt(n) - t/(4 n^{3/2}) for every i (verified).
    """
    U = np.atleast_2d(np.asarray(U, dtype=float)).copy()
    n = U.shape[1]
    if U.shape[0] != n:
        raise ValueError("need exactly n unit vectors")
    tmax = 1.0 / (2.0 * 4.0 ** (n - 2) * math.sqrt(math.factorial(n - 1)))
    if not (0.0 < t < tmax):
        raise ValueError(f"t must lie in (0, {tmax})")
    G = np.abs(U @ U.T) - np.eye(n) * 10.0
    i, j = np.unravel_index(int(np.argmax(G)), G.shape)
    if abs(U[i] @ U[j]) < math.sin(t) - EPS:
        raise HypothesisFailedError("all pairs nearly orthogonal; no deep hole forced")
    order = [i, j] + [r for r in range(n) if r not in (i, j)]
    V = U[order]
    w = V[0]
    for m in range(1, n):
        if V[m] @ w > 0:
            V[m] = -V[m]
        foot = _affine_foot(V[: m + 1])
        nrm = np.linalg.norm(foot)
        if nrm < 1e-13:
            # origin inside the affine hull: the points are dependent and a
            # common orthogonal direction exists, which is even deeper
            w = np.linalg.svd(V[: m + 1])[2][-1]
        else:
            w = foot / nrm
    bound = 1.0 / math.sqrt(n) - t / (4.0 * n ** 1.5)
    if np.max(np.abs(U @ w)) > bound + 1e-9:
        raise AssertionError("deep hole bound failed after construction")
    return w


@dataclass(frozen=True)
class CrossFit:
    frame: np.ndarray               # orthonormal rows v_i
    angular_errors: np.ndarray      # angle(v_i, u_i)
    certified_bound: float          # 4^{n-2} sqrt((n-1)!) t
    hausdorff: float                # delta_H({+-v_i}, {+-u_i})


def fit_cross_frame(U, t: float) -> CrossFit:
    """Orthonormalize nearly orthogonal unit vectors with certified errors.

    Hypothesis: |<u_i, u_j>| <= sin t for all i < j.  Gram-Schmidt with the
    sign convention <v_i, u_i> >= 0 gives angle(v_i, u_i) bounded by
    4^{i-2} sqrt((i-1)!) t for i >= 2, hence a cross measure within
    Hausdorff distance 4^{n-2} sqrt((n-1)!) t of {+-u_i}.
    """
    U = np.atleast_2d(np.asarray(U, dtype=float))
    n = U.shape[1]
    if U.shape[0] != n:
        raise ValueError("need exactly n unit vectors")
    G = np.abs(U @ U.T) - np.eye(n)
    if np.max(G) > math.sin(t) + EPS:
        raise HypothesisFailedError("some pair exceeds the sin(t) overlap bound")
    V = np.zeros_like(U)
    for i in range(n):
        r = U[i] - V[:i].T @ (V[:i] @ U[i])
        nrm = np.linalg.norm(r)
        if nrm < 1e-13:
            raise HypothesisFailedError("degenerate input frame")
        V[i] = r / nrm
    errs = np.array([sphere_angle(V[i], U[i]) for i in range(n)])
    for i in range(1, n):
        bnd = 4.0 ** (i - 1) * math.sqrt(math.factorial(i)) * t
        if errs[i] > bnd + 1e-9:
            raise AssertionError(f"per-step angle bound failed at i={i + 1}")
    cert = 4.0 ** (n - 2) * math.sqrt(math.factorial(n - 1)) * t
    dH = hausdorff_spherical(np.vstack([V, -V]), np.vstack([U, -U]))
    if dH > cert + 1e-9:
        raise AssertionError("hausdorff certificate failed")
    return CrossFit(frame=V, angular_errors=errs, certified_bound=cert,
                    hausdorff=dH)


# ---------------------------------------------------------------------------
# body distances (certified upper bounds)


def _both_reps(body: BodyRep):
    v = body.to_vrep() if body.kind != "V" else body
    h = body.to_hrep() if body.kind != "H" else body
    return v.vertices, h.halfspaces


def _gauge_points(A, b, X):
    return np.max((X @ A.T) / b, axis=1)


def banach_mazur(K: BodyRep, M: BodyRep, restarts: int = 24, seed: int = 0):
    """Upper bound on delta_BM(K, M) = log min { lam : K <= Phi M <= lam K }.

    For a trial Phi the optimal lam is computed exactly from vertex gauges:
    lam(Phi) = max_w gauge_{Phi M}(w) * max_v gauge_K(Phi v) over vertices
    w of K and v of M.  Phi ranges over a multistart Nelder-Mead family
    normalized to det = 1.  Returns (value, certificate).
    """
    n = K.dim
    if n not in (2, 3):
        from .errors import DimensionUnsupportedError

        raise DimensionUnsupportedError("banach_mazur implemented for n in {2, 3}")
    VK, (AK, bK) = _both_reps(K)
    VM, (AM, bM) = _both_reps(M)

    def lam_of(mat):
        det = np.linalg.det(mat)
        if abs(det) < 1e-9:
            return np.inf
        Phi = mat / abs(det) ** (1.0 / n)
        Phi_inv = np.linalg.inv(Phi)
        inner = np.max(_gauge_points(AM, bM, VK @ Phi_inv.T))
        outer = np.max(_gauge_points(AK, bK, VM @ Phi.T))
        return inner * outer

    rng = np.random.default_rng(seed)
    best = lam_of(np.eye(n))
    for r in range(restarts):
        start = np.eye(n) + 0.3 * rng.normal(size=(n, n)) if r else np.eye(n)
        res = minimize(lambda x: lam_of(x.reshape(n, n)), start.ravel(),
                       method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12,
                                "maxiter": 2000})
        best = min(best, float(res.fun))
    value = math.log(max(best, 1.0))
    cert = {"restarts": restarts, "lambda": best, "upper_bound_only": True}
    return value, cert


def _intersection_volume(A1, b1, A2, b2, n):
    A = np.vstack([A1, A2])
    b = np.concatenate([b1, b2])
    try:
        pts = halfspace_vertices(A, b)
    except Exception:
        return 0.0
    if len(pts) <= n:
        return 0.0
    try:
        return hull_volume_area(pts)[0]
    except Exception:
        return 0.0


def volume_distance(K: BodyRep, M: BodyRep, restarts: int = 12, seed: int = 0):
    """Upper bound on delta_vol(K, M): min over SL(n) of the symmetric
    difference volume of the volume-normalized bodies.

    For polytope inputs the symmetric difference is computed exactly from
    the halfspace intersection (V(sym diff) = 2 - 2 V(intersection) after
    normalizing both bodies to volume 1).  Returns (value, certificate).
    """
    n = K.dim
    VK, (AK, bK) = _both_reps(K)
    VM, (AM, bM) = _both_reps(M)
    volK = hull_volume_area(VK)[0]
    volM = hull_volume_area(VM)[0]
    alpha = volK ** (-1.0 / n)
    beta = volM ** (-1.0 / n)
    AMn, bMn = AM, bM * beta        # beta * M
    AKn, bKn = AK, bK * alpha       # alpha * K

    def sym_diff(mat):
        det = np.linalg.det(mat)
        if abs(det) < 1e-9:
            return 2.0
        Phi = mat / abs(det) ** (1.0 / n)
        Phi_inv = np.linalg.inv(Phi)
        inter = _intersection_volume(AKn @ Phi_inv, bKn, AMn, bMn, n)
        return max(2.0 - 2.0 * inter, 0.0)

    rng = np.random.default_rng(seed)
    best = sym_diff(np.eye(n))
    for r in range(restarts):
        start = np.eye(n) + 0.25 * rng.normal(size=(n, n)) if r else np.eye(n)
        res = minimize(lambda x: sym_diff(x.reshape(n, n)), start.ravel(),
                       method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 1500})
        best = min(best, float(res.fun))
    cert = {"restarts": restarts, "method": "exact-polytope-intersection",
            "upper_bound_only": True}
    return best, cert
