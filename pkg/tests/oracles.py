"""Independent oracles used to validate library results.

Everything here deliberately avoids the code paths under test: error
functions come from a Taylor series, CDFs from adaptive quadrature,
transport values from permutation enumeration, volumes from direct
combinatorial vertex enumeration, and orbit minima from dense grids.
"""

import itertools
import math

import numpy as np
from scipy.integrate import quad


def erf_series(x, terms=80):
    """erf by its Maclaurin series (plenty for |x| <= 4)."""
    s = 0.0
    for n in range(terms):
        s += (-1) ** n * x ** (2 * n + 1) / (math.factorial(n) * (2 * n + 1))
    return 2.0 / math.sqrt(math.pi) * s


def cdf_rho_p_quad(p, t):
    """CDF of exp(-|s|^p)/(2 Gamma(1+1/p)) by adaptive quadrature."""
    norm = 2.0 * math.gamma(1.0 + 1.0 / p)
    val, _ = quad(lambda s: math.exp(-abs(s) ** p) / norm, 0.0, t,
                  epsabs=1e-15, epsrel=1e-13, limit=200)
    return 0.5 + val


def central_diff(f, t, h=1e-5):
    return (f(t + h) - f(t - h)) / (2.0 * h)


def second_diff(f, t, h=1e-4):
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h)


def angle(u, w):
    return math.acos(max(-1.0, min(1.0, float(np.dot(u, w)))))


def assignment_transport(points_a, points_b):
    """Exact min-cost matching for equal-weight unit atoms (<= 8 a side)."""
    A = np.atleast_2d(points_a)
    B = np.atleast_2d(points_b)
    assert len(A) == len(B) <= 8
    idx = range(len(B))
    best = math.inf
    C = np.array([[angle(a, b) for b in B] for a in A])
    for perm in itertools.permutations(idx):
        cost = sum(C[i, j] for i, j in enumerate(perm))
        best = min(best, cost)
    return best / len(A)


def split_to_units(mu, denom):
    """Replicate atoms into equal 1/denom units; requires exact multiples."""
    pts = []
    for u, c in zip(mu.directions, mu.weights):
        m = c * denom
        k = int(round(m))
        assert abs(m - k) < 1e-9
        pts += [u] * k
    return np.array(pts)


def transport_units_oracle(mu, nu, denom):
    """Brute-force transport between measures with weights in (1/denom) Z."""
    A = split_to_units(mu, denom)
    B = split_to_units(nu, denom)
    return assignment_transport(A, B) * len(A) / denom


def vertex_enum_combinatorial(A, b, tol=1e-9):
    """All vertices of {Ax <= b} by n-subset solves (independent of Qhull)."""
    A = np.asarray(A, float)
    b = np.asarray(b, float)
    m, n = A.shape
    out = []
    for S in itertools.combinations(range(m), n):
        sub = A[list(S)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[list(S)])
        if np.all(A @ x <= b + tol):
            out.append(x)
    V = np.array(out)
    # deduplicate
    keep = []
    for x in V:
        if not any(np.linalg.norm(x - y) < 1e-8 for y in keep):
            keep.append(x)
    return np.array(keep)


def polygon_area_shoelace(V):
    hullorder = np.argsort(np.arctan2(V[:, 1], V[:, 0]))
    V = V[hullorder]
    x, y = V[:, 0], V[:, 1]
    return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))


def rotation_grid_orbit_min(objective, period, npts):
    """Dense-grid minimization over one rotation angle."""
    grid = np.linspace(0.0, period, npts, endpoint=False)
    vals = [objective(phi) for phi in grid]
    i = int(np.argmin(vals))
    return float(vals[i]), float(grid[i])
