"""The uniform qubit ensemble: closed-form trade-off curve and a finite
discretized cross-check.

The closed form is the one-parameter family
    R(lam) = lam/(e^lam - 1) - 1 + log2(lam e^lam / (e^lam - 1))
    Q(lam) = H2(1/lam - 1/(e^lam - 1))
whose endpoints are (R, Q) -> (0, 1) as lam -> 0+ and Q -> 0 as lam -> inf.
(The printed source has an epsilon glyph where endpoint consistency requires
the natural base e; this module implements e^lam.)
"""

from __future__ import annotations

import math

import numpy as np

from . import qcore, solver


def devetak_berger(lam: float) -> tuple[float, float]:
    """One point (R, Q) of the uniform-qubit trade-off curve."""
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    # Rearranged around e^(-lam) so both ends of the parameter are stable:
    # lam/(e^lam - 1) = lam e^-lam / (1 - e^-lam) and
    # log2(lam e^lam / (e^lam - 1)) = log2 lam - log(1 - e^-lam)/ln 2.
    en = math.exp(-lam)
    inv_em1 = en / (-math.expm1(-lam))      # 1 / (e^lam - 1)
    R = lam * inv_em1 - 1.0 + math.log2(lam) \
        - math.log1p(-en) / math.log(2.0)
    x = 1.0 / lam - inv_em1
    Q = qcore.binary_entropy(min(max(x, 0.0), 1.0))
    return R, Q


def uniform_qubit_curve(n_lambda: int = 64,
                        lam_min: float = 1e-3, lam_max: float = 50.0):
    """Closed-form curve samples on a log-spaced lambda grid, R ascending."""
    if n_lambda < 2:
        raise ValueError("need at least 2 samples")
    lams = np.logspace(np.log10(lam_min), np.log10(lam_max), n_lambda)
    pts = [devetak_berger(l) for l in lams]
    return np.array(pts)          # (n, 2) with columns (R, Q)


def uniform_qubit_Q(R: float, tol: float = 1e-10) -> float:
    """Closed-form Q at a given R by bisection on the monotone parameter."""
    lo, hi = 1e-8, 1e4
    if R <= devetak_berger(lo)[0]:
        return devetak_berger(lo)[1]
    if R >= devetak_berger(hi)[0]:
        return devetak_berger(hi)[1]
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if devetak_berger(mid)[0] < R:
            lo = mid
        else:
            hi = mid
    return devetak_berger(0.5 * (lo + hi))[1]


def fibonacci_sphere(n: int) -> np.ndarray:
    """n approximately uniform unit vectors on S^2 (Fibonacci lattice)."""
    i = np.arange(n, dtype=float)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    z = 1.0 - (2.0 * i + 1.0) / n
    phi = 2.0 * math.pi * i / golden
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def bloch_to_state(v: np.ndarray) -> np.ndarray:
    """Pure qubit state with Bloch vector v (unit length)."""
    theta = math.acos(min(max(v[2], -1.0), 1.0))
    phi = math.atan2(v[1], v[0])
    return np.array([math.cos(theta / 2.0),
                     complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2.0)])


def discretize_uniform_qubit(n_points: int, probe: int = 2000):
    """Equal-weight Fibonacci-sphere qubit ensemble with achieved covering
    radius (max trace distance from any pure state to the nearest member)."""
    if n_points < 2:
        raise ValueError("need n_points >= 2")
    vs = fibonacci_sphere(n_points)
    states = np.array([bloch_to_state(v) for v in vs])
    E = qcore.Ensemble(states, np.full(n_points, 1.0 / n_points))
    # Trace distance between pure qubits = half the Bloch-vector distance.
    test = fibonacci_sphere(probe)
    d2 = ((test[:, None, :] - vs[None, :, :]) ** 2).sum(axis=2)
    eps = 0.5 * math.sqrt(float(d2.min(axis=1).max()))
    return E, eps


def partition_count_bound(d: int, eps: float) -> float:
    """Counting bound m <= C(d) eps^(-d^2) with C(d) = (2 sqrt(2) d^3)^(d^2)
    from the hypercube partition argument (not used for placement)."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    return (2.0 * math.sqrt(2.0) * d ** 3) ** (d * d) * eps ** (-d * d)


def gibbs_candidate_points(E: qcore.Ensemble, n_directions: int = 256,
                           lams=None) -> np.ndarray:
    """Structured posterior candidates for large m (full grids are hopeless).

    The optimal continuum decomposition concentrates posteriors
    exponentially around a direction, so candidates of the form
    x_i proportional to exp(lam |<psi|phi_i>|^2) over a Bloch mesh of psi and
    a lambda ladder span the relevant region; vertices and the prior are
    added by the grid constructor.
    """
    if lams is None:
        lams = np.concatenate([[0.0], np.logspace(-1.0, 1.8, 40)])
    dirs = [bloch_to_state(v) for v in fibonacci_sphere(n_directions)]
    overlaps = np.array([np.abs(E.states @ np.conj(psi)) ** 2 for psi in dirs])
    points = []
    for ov in overlaps:
        for lam in lams:
            w = np.exp(lam * (ov - ov.max()))
            points.append(w / w.sum())
    return np.array(points)


def discretized_uniform_qubit_curve(n_points: int, R_values,
                                    n_directions: int = 256):
    """Solver values on the discretized ensemble at the given R list."""
    E, eps = discretize_uniform_qubit(n_points)
    cand = gibbs_candidate_points(E, n_directions=n_directions)
    grid = solver.SimplexGrid.from_points(E, cand)
    out = []
    for R in R_values:
        Q, _ = solver.solve_M(E, R, grid=grid, refine=False)
        out.append(Q)
    return np.array(out), eps
