"""Independent brute-force ground truth for small instances.

Deliberately avoids the LP machinery: kernels are enumerated on row-wise
independent grids, entropies go through closed-form / Jacobi eigensolvers,
so bugs here and in the solver are uncorrelated.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from . import qcore
from ._backend import scan_pair_tables


class BudgetExceededError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Eigensolvers independent of numpy.linalg


def eig2(A: np.ndarray):
    """Closed-form eigenpairs of a Hermitian 2x2 matrix (quadratic formula).

    Returns (eigenvalues ascending, eigenvectors as columns).
    """
    A = np.asarray(A, dtype=complex)
    a = A[0, 0].real
    d = A[1, 1].real
    b = A[0, 1]
    mean = 0.5 * (a + d)
    r = math.sqrt((0.5 * (a - d)) ** 2 + abs(b) ** 2)
    evals = np.array([mean - r, mean + r])
    vecs = np.zeros((2, 2), dtype=complex)
    for k, lam in enumerate(evals):
        # (A - lam) v = 0; pick the more stable row.
        if abs(b) > 1e-300:
            v = np.array([b, lam - a])
        elif a <= d:
            v = np.array([1.0, 0.0]) if k == 0 else np.array([0.0, 1.0])
        else:
            v = np.array([0.0, 1.0]) if k == 0 else np.array([1.0, 0.0])
        n = np.linalg.norm(v)
        vecs[:, k] = v / n if n > 0 else v
    return evals, vecs


def eig_small(A: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60):
    """Cyclic Jacobi eigensolver for Hermitian d x d matrices (d <= ~16).

    Returns (eigenvalues ascending, eigenvectors as columns), residual
    ||A v - lam v|| <= 1e-10 per pair.
    """
    A = np.asarray(A, dtype=complex).copy()
    d = A.shape[0]
    V = np.eye(d, dtype=complex)
    scale = max(np.abs(A).max(), 1.0)
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                off = max(off, abs(apq))
                if abs(apq) <= tol * scale:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                phase = apq / abs(apq)
                tau = (aqq - app) / (2.0 * abs(apq))
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Unitary rotation in the (p, q) plane absorbing the phase.
                Jp = np.eye(d, dtype=complex)
                Jp[p, p] = c
                Jp[q, q] = c
                Jp[p, q] = s * phase
                Jp[q, p] = -s * np.conj(phase)
                A = Jp.conj().T @ A @ Jp
                V = V @ Jp
        if off <= tol * scale:
            break
    evals = np.diag(A).real
    order = np.argsort(evals)
    return evals[order], V[:, order]


def _entropy_from_evals(evals) -> float:
    lam = np.clip(np.asarray(evals, dtype=float), 0.0, 1.0)
    nz = lam[lam > 0.0]
    return float(-(nz * np.log2(nz)).sum())


# ---------------------------------------------------------------------------
# Brute-force kernel scans


def _row_grid(steps: int, J: int) -> np.ndarray:
    """All length-J count vectors summing to `steps`, as probabilities."""
    rows = list(_compositions(J, steps))
    return np.array(rows, dtype=float) / steps


def _compositions(length: int, total: int):
    if length == 1:
        yield (total,)
        return
    for v in range(total + 1):
        for rest in _compositions(length - 1, total - v):
            yield (v,) + rest


def _pair_tables(E: qcore.Ensemble, steps: int):
    """Per-column contribution tables for m = 2.

    G[a, b] = q * S(posterior mixture), Hc[a, b] = q * H2(posterior), where
    the column takes weight a/steps from state 1 and b/steps from state 2.
    Uses the closed-form 2x2 spectrum through the squared overlap.
    """
    p1, p2 = E.probs
    c = abs(E.overlap_gram()[0, 1]) ** 2
    a = np.arange(steps + 1, dtype=float)[:, None] / steps
    b = np.arange(steps + 1, dtype=float)[None, :] / steps
    q = p1 * a + p2 * b
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(q > 0.0, p1 * a / np.where(q > 0.0, q, 1.0), 0.0)
    disc = np.sqrt(np.clip(1.0 - 4.0 * t * (1.0 - t) * (1.0 - c), 0.0, 1.0))
    lam_hi = 0.5 * (1.0 + disc)
    lam_lo = 0.5 * (1.0 - disc)

    def h(x):
        x = np.clip(x, 0.0, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x > 0.0, -x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)

    G = q * (h(lam_hi) + h(lam_lo))
    Hc = q * (h(t) + h(1.0 - t))
    return G, Hc


def _scan_pair(E: qcore.Ensemble, R_list, steps: int, n_mode: bool) -> np.ndarray:
    G, Hc = _pair_tables(E, steps)
    Hp = qcore.shannon_entropy(E.probs)
    slack = 1.0 / steps
    thr = np.asarray(R_list, dtype=float) + slack
    return np.asarray(scan_pair_tables(
        np.ascontiguousarray(G), np.ascontiguousarray(Hc), Hp, thr, n_mode))


def _xlog2x(x):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)


def _scan_generic(E: qcore.Ensemble, R_list, J: int, steps: int,
                  n_mode: bool) -> np.ndarray:
    m = E.m
    P = math.comb(steps + J - 1, J - 1)
    if P ** m > 1e9:
        raise BudgetExceededError(
            f"kernel grid has {P}^{m} points; reduce steps or J_max")
    rows = _row_grid(steps, J)
    p = E.probs
    Hp = qcore.shannon_entropy(p)
    slack = 1.0 / steps
    thr = np.asarray(R_list, dtype=float) + slack
    best = np.full(thr.shape, np.inf)

    projs = E.projectors
    chunk = 20000
    idx_iter = itertools.product(range(P), repeat=m)
    while True:
        block = np.array(list(itertools.islice(idx_iter, chunk)), dtype=np.intp)
        if block.size == 0:
            break
        K = rows[block, :]                       # (C, m, J)
        joint = p[None, :, None] * K             # p_i p(j|i)
        q = joint.sum(axis=1)                    # (C, J)
        # sum_j q_j H(posterior_j) = -sum_ij joint log joint + sum_j q log q
        hcond = -_xlog2x(joint).sum(axis=(1, 2)) + _xlog2x(q).sum(axis=1)
        info = Hp - hcond
        # Work with q_j * rho_j = sum_i joint_ij |phi_i><phi_i| so columns
        # with q_j = 0 never require a division.
        scaled = np.einsum("cij,iab->cjab", joint, projs)
        if E.dim == 2:
            half_tr = 0.5 * (scaled[..., 0, 0].real + scaled[..., 1, 1].real)
            half_diff = 0.5 * (scaled[..., 0, 0].real - scaled[..., 1, 1].real)
            r = np.sqrt(half_diff ** 2 + np.abs(scaled[..., 0, 1]) ** 2)
            lam = np.stack([half_tr - r, half_tr + r], axis=-1)  # (C, J, 2)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                qs = np.where(q > 0.0, q, 1.0)
            lam = np.linalg.eigvalsh(scaled / qs[..., None, None]) * q[..., None]
        # chi = sum_j q_j S(rho_j); the scaled spectra are q_j * eigenvalues:
        # -sum q lam/q log(lam/q) = -sum slam log slam + sum q log q
        lam = np.clip(lam, 0.0, None)
        chi = -_xlog2x(lam).sum(axis=(1, 2)) + _xlog2x(q).sum(axis=1)
        chi = np.maximum(chi, 0.0)
        lhs = info + chi if n_mode else info
        for t in range(len(thr)):
            ok = lhs <= thr[t]
            if ok.any():
                v = chi[ok].min()
                if v < best[t]:
                    best[t] = v
    return best


def _brute(E: qcore.Ensemble, R, J_max, steps: int, n_mode: bool):
    if E.m > 3:
        raise BudgetExceededError("brute force limited to m <= 3")
    J = min(J_max if J_max is not None else E.m + 1, 4)
    scalar = np.isscalar(R)
    R_list = [float(R)] if scalar else [float(r) for r in R]
    if E.m == 2 and J == 3:
        out = _scan_pair(E, R_list, steps, n_mode)
    else:
        out = _scan_generic(E, R_list, J, steps, n_mode)
    if np.isinf(out).any():
        from .simplexlp import InfeasibleError
        raise InfeasibleError("no feasible kernel at the given R")
    return float(out[0]) if scalar else out


def brute_force_M(E: qcore.Ensemble, R, J_max: int | None = None,
                  steps: int = 40):
    """Exhaustive-grid minimum of S(A:B|C) subject to S(A:C) <= R + 1/steps.

    R may be a scalar or a list (one scan serves all thresholds).  The value
    is an upper bound on M(E, R) that decreases as `steps` grows.
    """
    return _brute(E, R, J_max, steps, n_mode=False)


def brute_force_N(E: qcore.Ensemble, R, J_max: int | None = None,
                  steps: int = 40):
    """As brute_force_M with the RSP constraint S(A:BC) <= R + 1/steps."""
    return _brute(E, R, J_max, steps, n_mode=True)
