"""Self-contained dense two-phase simplex method with Bland's rule.

Sized for the barycentric LPs of this package: a handful of rows (m + 2 at
most, ~65 for the large structured grids) against up to tens of thousands of
columns.  The basis system is re-solved densely each pivot, which is cheap at
these row counts and avoids accumulating inverse-update error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InfeasibleError(RuntimeError):
    pass


class UnboundedError(RuntimeError):
    pass


@dataclass
class LPResult:
    x: np.ndarray          # primal solution over the original columns
    objective: float
    basis: list[int]       # basic column indices (original numbering)
    iterations: int


def _pivot_loop(A, b, c, basis, banned, tol, max_iter):
    """Run simplex pivots to optimality.  Mutates `basis`; returns (x_B, iters).

    Pricing is Dantzig (most negative reduced cost) while the objective
    improves and switches to Bland's rule after a stretch of degenerate
    pivots, which restores the anti-cycling guarantee.
    """
    r, N = A.shape
    last_obj = np.inf
    stall = 0
    for it in range(max_iter):
        B = A[:, basis]
        xB = np.linalg.solve(B, b)
        # Snap numerically-zero basic values to exact zero: degenerate
        # pivots then take exactly zero-length steps and Bland's rule keeps
        # its termination guarantee in floating point.
        xB[np.abs(xB) < 1e-11] = 0.0
        obj = float(c[basis] @ xB)
        if obj < last_obj - 1e-12:
            stall = 0
        else:
            stall += 1
        last_obj = obj
        y = np.linalg.solve(B.T, c[basis])
        reduced = c - y @ A
        reduced[basis] = 0.0
        cand = np.flatnonzero(reduced < -tol)
        if banned is not None and cand.size:
            cand = cand[~banned[cand]]
        if cand.size == 0:
            return xB, it
        if stall > 5000:
            # Degenerate cycling in floating point; hand off to the fallback.
            raise RuntimeError("simplex stalled on a degenerate instance")
        if stall > 30:
            j = int(cand[0])                   # Bland: lowest index enters
        else:
            j = int(cand[np.argmin(reduced[cand])])
        d = np.linalg.solve(B, A[:, j])
        pos = d > tol
        if not pos.any():
            raise UnboundedError("LP is unbounded")
        with np.errstate(divide="ignore"):
            ratios = np.where(pos, xB / np.where(pos, d, 1.0), np.inf)
        theta = ratios.min()
        ties = np.flatnonzero(np.abs(ratios - theta) <= 1e-12)
        # Bland: among ties, leave the variable with the lowest index.
        leave_pos = int(min(ties, key=lambda t: basis[t]))
        basis[leave_pos] = j
    raise RuntimeError("simplex iteration limit reached")


def _solve_lp_fallback(c, A, b) -> LPResult:
    """Delegate to scipy's HiGHS solver when the dense simplex stalls on a
    degenerate instance (zero-length pivots can cycle in floating point)."""
    from scipy.optimize import linprog

    res = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    if res.status == 2:
        raise InfeasibleError("LP infeasible (fallback solver)")
    if res.status == 3:
        raise UnboundedError("LP unbounded (fallback solver)")
    if not res.success:
        raise RuntimeError(f"fallback LP solver failed: {res.message}")
    x = np.clip(res.x, 0.0, None)
    support = [int(j) for j in np.flatnonzero(x > 1e-12)]
    return LPResult(x=x, objective=float(c @ x), basis=support, iterations=-1)


def solve_lp(c, A, b, tol: float = 1e-9, max_iter: int = 200000) -> LPResult:
    """Minimize c @ x subject to A x = b, x >= 0."""
    A = np.ascontiguousarray(A, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    c = np.asarray(c, dtype=float)
    r, N = A.shape

    flip = b < 0.0
    A = A.copy()
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Phase 1: artificial identity basis.
    A1 = np.hstack([A, np.eye(r)])
    c1 = np.concatenate([np.zeros(N), np.ones(r)])
    basis = list(range(N, N + r))
    try:
        xB, it1 = _pivot_loop(A1, b, c1, basis, None, tol, max_iter)
    except (RuntimeError, np.linalg.LinAlgError):
        return _solve_lp_fallback(c, A, b)
    art_val = float(c1[basis] @ xB)
    if art_val > 1e-7:
        raise InfeasibleError(f"phase-1 optimum {art_val:.3e} > 0")

    # Drive artificials out of the basis where possible; rows where no real
    # column pivots are redundant and keep a zero-valued artificial.
    for pos in range(r):
        if basis[pos] >= N:
            B = A1[:, basis]
            for j in range(N):
                if j in basis:
                    continue
                d = np.linalg.solve(B, A1[:, j])
                if abs(d[pos]) > 1e-8:
                    basis[pos] = j
                    break

    banned = np.zeros(N + r, dtype=bool)
    banned[N:] = True
    c2 = np.concatenate([c, np.zeros(r)])
    try:
        xB, it2 = _pivot_loop(A1, b, c2, basis, banned, tol, max_iter)
    except (RuntimeError, np.linalg.LinAlgError):
        return _solve_lp_fallback(c, A, b)

    x = np.zeros(N)
    for pos, j in enumerate(basis):
        if j < N:
            x[j] = max(xB[pos], 0.0)
    keep = [j for j in basis if j < N]
    return LPResult(x=x, objective=float(c @ x), basis=keep,
                    iterations=it1 + it2)
