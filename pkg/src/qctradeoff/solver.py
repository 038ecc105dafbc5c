"""Trade-off curve solver: barycentric LP over simplex grids plus refinement.

M(E, R) is the minimum average entropy sum_k w_k S(f(x_k)) over probability
weights w on posterior distributions x_k with barycenter p, subject to the
information constraint sum_k w_k H(x_k) >= H(p) - R.  Both the objective and
the constraints are linear in w once each candidate posterior carries its
precomputed S(f(x)) and H(x), so a simplex grid turns the problem into an LP
whose basic optima have support <= m + 1; a continuous local refinement then
polishes the support points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .simplexlp import InfeasibleError, solve_lp

DEFAULT_RESOLUTION = {2: 64, 3: 24, 4: 12}
REFINE_TOL = 1e-9
REFINE_MAX_ITER = 500


@dataclass(frozen=True)
class DecompositionPoint:
    """One posterior x in the simplex with its mixture weight w."""
    x: np.ndarray
    w: float


@dataclass
class CurveSample:
    R: float
    Q: float
    kernel: np.ndarray | None
    support_size: int


@dataclass
class TradeoffCurve:
    samples: list[CurveSample]
    S_E: float
    H_p: float
    grid_resolution: int | None = None

    def R_values(self):
        return np.array([s.R for s in self.samples])

    def Q_values(self):
        return np.array([s.Q for s in self.samples])

    def interpolate(self, R: float) -> float:
        Rs = self.R_values()
        Qs = self.Q_values()
        if R <= Rs[0]:
            return float(Qs[0])
        if R >= Rs[-1]:
            return float(Qs[-1])
        return float(np.interp(R, Rs, Qs))

    def check_invariants(self, tol: float = 1e-9):
        Rs = self.R_values()
        Qs = self.Q_values()
        if not np.all(np.diff(Rs) > 0):
            raise AssertionError("R samples must be strictly increasing")
        if not np.all(np.diff(Qs) <= tol):
            raise AssertionError("Q must be nonincreasing")
        for i in range(1, len(Rs) - 1):
            lam = (Rs[i] - Rs[i - 1]) / (Rs[i + 1] - Rs[i - 1])
            chord = (1 - lam) * Qs[i - 1] + lam * Qs[i + 1]
            if Qs[i] > chord + tol:
                raise AssertionError("curve is not convex")


def _simplex_points(m: int, k: int) -> np.ndarray:
    counts = list(_compositions(m, k))
    return np.array(counts, dtype=float) / k


def _compositions(length: int, total: int):
    if length == 1:
        yield (total,)
        return
    for v in range(total + 1):
        for rest in _compositions(length - 1, total - v):
            yield (v,) + rest


def _xlog2x(x):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)


def _annotate(E: qcore.Ensemble, points: np.ndarray):
    """S(f(x)) and H(x) for a batch of posteriors, shape (P, m)."""
    mixtures = np.einsum("pi,iab->pab", points, E.projectors)
    lam = np.clip(np.linalg.eigvalsh(mixtures), 0.0, 1.0)
    S = -_xlog2x(lam).sum(axis=1)
    H = -_xlog2x(points).sum(axis=1)
    return S, H


@dataclass
class SimplexGrid:
    """Annotated candidate posteriors for the barycentric LP."""
    points: np.ndarray            # (P, m)
    S: np.ndarray                 # S(f(x)) per point
    H: np.ndarray                 # H(x) per point
    resolution: int | None
    prior_index: int

    @classmethod
    def regular(cls, E: qcore.Ensemble, k: int | None = None,
                prior: np.ndarray | None = None) -> "SimplexGrid":
        m = E.m
        if k is None:
            if m not in DEFAULT_RESOLUTION:
                raise ValueError(
                    f"no default resolution for m = {m}; pass k explicitly "
                    "(cost grows like k^(m-1))")
            k = DEFAULT_RESOLUTION[m]
        points = _simplex_points(m, k)
        return cls.from_points(E, points, prior=prior, resolution=k)

    @classmethod
    def from_points(cls, E: qcore.Ensemble, points: np.ndarray,
                    prior: np.ndarray | None = None,
                    resolution: int | None = None) -> "SimplexGrid":
        p = np.asarray(E.probs if prior is None else prior, dtype=float)
        points = np.asarray(points, dtype=float)
        # The prior is always a grid point so R = 0 is exactly feasible.
        hit = np.flatnonzero(np.all(np.abs(points - p) < 1e-15, axis=1))
        if hit.size:
            prior_index = int(hit[0])
        else:
            points = np.vstack([points, p])
            prior_index = points.shape[0] - 1
        # Vertices make R = H(p) exactly feasible.
        missing = []
        for i in range(E.m):
            v = np.zeros(E.m)
            v[i] = 1.0
            if not np.any(np.all(np.abs(points - v) < 1e-15, axis=1)):
                missing.append(v)
        if missing:
            points = np.vstack([points] + [v[None, :] for v in missing])
        S, H = _annotate(E, points)
        return cls(points=points, S=S, H=H, resolution=resolution,
                   prior_index=prior_index)


def _solve_weights(points, S, H, p, Hp, R, mode):
    """Barycentric LP on an explicit candidate set.

    mode "M": min sum w S  s.t.  sum w x = p, sum w H >= Hp - R
    mode "N": min sum w S  s.t.  sum w x = p, sum w (H - S) >= Hp - R
    The entropy inequality gets a slack column; sum w = 1 is implied by the
    barycenter rows since every candidate sums to 1.
    """
    P = points.shape[0]
    m = points.shape[1]
    row = (H - S) if mode == "N" else H
    A = np.zeros((m + 1, P + 1))
    A[:m, :P] = points.T
    A[m, :P] = row
    A[m, P] = -1.0
    b = np.concatenate([p, [Hp - R]])
    c = np.concatenate([S, [0.0]])
    res = solve_lp(c, A, b)
    w = res.x[:P]
    support = np.flatnonzero(w > 1e-12)
    return float(res.objective), w, support


def _refine(E, p, Hp, R, mode, points0, weights0, value0, step0):
    """Pattern-search refinement of the LP support inside the simplex.

    Moves mass between coordinate pairs of each support point, re-solving the
    small LP on the enlarged candidate set; the step is halved when no move
    improves.  Keeps barycenter feasibility exactly (the LP re-solves it).
    """
    m = E.m
    pts = [np.array(x) for x in points0]
    value = value0
    step = step0
    for _ in range(REFINE_MAX_ITER):
        cand = [p] + pts
        for x in pts:
            for a, bcoord in itertools.permutations(range(m), 2):
                if x[bcoord] < 1e-15:
                    continue
                d = min(step, x[bcoord])
                x2 = x.copy()
                x2[a] += d
                x2[bcoord] -= d
                cand.append(x2)
        cand = np.array(cand)
        S, H = _annotate(E, cand)
        try:
            val, w, support = _solve_weights(cand, S, H, p, Hp, R, mode)
        except InfeasibleError:
            break
        improved = val < value - REFINE_TOL
        if improved:
            value = val
            pts = [cand[i] for i in support]
            weights = w[support]
        else:
            step *= 0.5
            if step < 1e-7:
                break
    cand = np.array([p] + pts)
    S, H = _annotate(E, cand)
    value, w, support = _solve_weights(cand, S, H, p, Hp, R, mode)
    return value, [DecompositionPoint(x=cand[i], w=float(w[i])) for i in support]


def witness_to_kernel(E: qcore.Ensemble, witness: list[DecompositionPoint]):
    """Bayes inversion p(j|i) = w_j x_j(i) / p_i of a decomposition."""
    p = E.probs
    m = E.m
    K = np.zeros((m, len(witness)))
    for j, pt in enumerate(witness):
        K[:, j] = pt.w * pt.x
    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.where(p[:, None] > 0.0, K / np.where(p[:, None] > 0.0, p[:, None], 1.0), 0.0)
    # Rows for zero-probability inputs get an arbitrary valid value.
    rowsum = K.sum(axis=1)
    for i in range(m):
        if rowsum[i] <= 0.0:
            K[i, 0] = 1.0
        else:
            K[i, :] /= rowsum[i]
    return K


def _prep(E, grid, prior):
    p = np.asarray(E.probs if prior is None else prior, dtype=float)
    if grid is None:
        grid = SimplexGrid.regular(E, prior=p)
    Hp = float(grid.H[grid.prior_index])
    return grid, p, Hp


def solve_M(E: qcore.Ensemble, R: float, grid: SimplexGrid | None = None,
            refine: bool = True, prior: np.ndarray | None = None):
    """Minimum conditional quantum rate at classical rate R.

    Returns (Q, witness).  R beyond H(p) is clamped (the curve is constant 0
    there); negative R is infeasible.
    """
    if R < -1e-12:
        raise InfeasibleError("R must be nonnegative")
    grid, p, Hp = _prep(E, grid, prior)
    R = min(max(R, 0.0), Hp)
    value, w, support = _solve_weights(grid.points, grid.S, grid.H, p, Hp, R, "M")
    if refine and E.m <= 8:
        step0 = 0.5 / grid.resolution if grid.resolution else 0.1
        value, witness = _refine(E, p, Hp, R, "M",
                                 [grid.points[i] for i in support],
                                 w[support], value, step0)
    else:
        witness = [DecompositionPoint(x=grid.points[i], w=float(w[i]))
                   for i in support]
    return max(value, 0.0), witness


def trade_off_curve(E: qcore.Ensemble, n_samples: int = 21,
                    grid: SimplexGrid | None = None,
                    refine: bool = True) -> TradeoffCurve:
    """Sample Q*(R) = M(E, R) on an R-grid over [0, H(p)], both ends included."""
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    grid, p, Hp = _prep(E, grid, None)
    S_E = float(grid.S[grid.prior_index])
    Rs = np.linspace(0.0, Hp, n_samples)
    raw = []
    for R in Rs:
        Q, witness = solve_M(E, R, grid=grid, refine=refine)
        raw.append((float(R), Q, witness_to_kernel(E, witness), len(witness)))
    # Lower convex hull in (R, Q): chords between achievable samples remain
    # achievable by time sharing, so the hull is still an upper bound on the
    # true convex curve and restores exact discrete convexity.
    Qh = _lower_hull([r for r, *_ in raw], [q for _, q, *_ in raw])
    samples = [CurveSample(R=r, Q=qh, kernel=k, support_size=s)
               for (r, q, k, s), qh in zip(raw, Qh)]
    curve = TradeoffCurve(samples=samples, S_E=S_E, H_p=Hp,
                          grid_resolution=grid.resolution)
    curve.check_invariants()
    return curve


def _lower_hull(Rs, Qs):
    pts = list(zip(Rs, Qs))
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    hx = [h[0] for h in hull]
    hy = [h[1] for h in hull]
    return [float(np.interp(r, hx, hy)) for r in Rs]


def solve_X(E: qcore.Ensemble, R: float, grid: SimplexGrid | None = None,
            refine: bool = True) -> float:
    """Information-disturbance quantity X(E, R) = R + M(E, R)."""
    Q, _ = solve_M(E, R, grid=grid, refine=refine)
    return R + Q


def solve_N_rsp(E: qcore.Ensemble, R: float, grid: SimplexGrid | None = None,
                refine: bool = True):
    """Remote-state-preparation curve: min S(A:B|C) s.t. S(A:BC) <= R.

    Infeasible when R < S(E) (the joint information is at least S(E)).
    """
    grid, p, Hp = _prep(E, grid, None)
    S_E = float(grid.S[grid.prior_index])
    if R < S_E - 1e-9:
        raise InfeasibleError(f"R = {R} < S(E) = {S_E}: no valid encoding")
    try:
        value, w, support = _solve_weights(grid.points, grid.S, grid.H, p, Hp,
                                           min(R, Hp), "N")
    except InfeasibleError:
        # Grid coarseness can hide feasibility just above S(E); the prior
        # itself is feasible once R >= S(E), so fall back to it.
        value = S_E
        w = np.zeros(grid.points.shape[0])
        w[grid.prior_index] = 1.0
        support = np.array([grid.prior_index])
    if refine and E.m <= 8:
        step0 = 0.5 / grid.resolution if grid.resolution else 0.1
        value, witness = _refine(E, p, Hp, min(R, Hp), "N",
                                 [grid.points[i] for i in support],
                                 w[support], value, step0)
    else:
        witness = [DecompositionPoint(x=grid.points[i], w=float(w[i]))
                   for i in support]
    return max(value, 0.0), witness


def blind_rate(E: qcore.Ensemble):
    """Optimal blind rate: sum_l a_l S(E_l) over irreducible components.

    Components are the connected components of the overlap graph; the value
    is computed both as the component sum and as S(E) - H(a) and the two are
    asserted equal within 1e-9.
    """
    m = E.m
    gram = np.abs(E.overlap_gram()) > 1e-10
    seen = [False] * m
    components = []
    for start in range(m):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(m):
                if not seen[j] and gram[i, j]:
                    seen[j] = True
                    stack.append(j)
        components.append(sorted(comp))

    a = np.array([E.probs[comp].sum() for comp in components])
    q_sum = 0.0
    for comp, al in zip(components, a):
        if al <= 0.0:
            continue
        sub = E.probs[comp] / al
        rho = np.einsum("i,iab->ab", sub, E.projectors[comp])
        q_sum += al * qcore.von_neumann_entropy(rho, validate=False)
    q_diff = E.entropy() - qcore.shannon_entropy(a)
    if abs(q_sum - q_diff) > 1e-9:
        raise AssertionError(
            f"blind-rate identity violated: {q_sum} vs {q_diff}")
    return q_sum, components


def tensor_tradeoff(curve1: TradeoffCurve, curve2: TradeoffCurve,
                    R: float) -> float:
    """Trade-off of a product source: min over splits R1 + R2 = R.

    Both inputs are convex piecewise-linear curves, so the minimum over the
    split is attained at a breakpoint of either term; all breakpoints are
    enumerated exactly.
    """
    if R > curve1.H_p + curve2.H_p + 1e-9:
        raise ValueError("R exceeds H(p1) + H(p2)")
    lo = max(0.0, R - curve2.H_p)
    hi = min(R, curve1.H_p)
    cands = {lo, hi}
    for s in curve1.samples:
        if lo - 1e-12 <= s.R <= hi + 1e-12:
            cands.add(min(max(s.R, lo), hi))
    for s in curve2.samples:
        r1 = R - s.R
        if lo - 1e-12 <= r1 <= hi + 1e-12:
            cands.add(min(max(r1, lo), hi))
    return min(curve1.interpolate(r1) + curve2.interpolate(R - r1)
               for r1 in cands)


def avs_sup(E_states: np.ndarray, P_vertices, R: float,
            grid: SimplexGrid | None = None, resolution: int = 16,
            refine: bool = True):
    """Supremum of M(E, p, R) over priors p in conv(P_vertices).

    Mesh multistart over barycentric combinations of the vertices at the
    given resolution, then a Nelder-Mead polish on softmax-parameterized
    weights (M is continuous but not concave in p, so multistart matters).
    Returns (Q, achieving prior).
    """
    from scipy.optimize import minimize

    verts = np.array([np.asarray(v, dtype=float) for v in P_vertices])
    if verts.size == 0:
        raise ValueError("empty vertex list")
    nv = verts.shape[0]

    def M_of_prior(p):
        p = np.clip(p, 0.0, None)
        p = p / p.sum()
        E = qcore.Ensemble(E_states, p)
        Q, _ = solve_M(E, R, grid=None, refine=refine, prior=p)
        return Q, p

    best_val = -np.inf
    best_p = None
    best_lam = None
    for counts in _compositions(nv, resolution):
        lam = np.array(counts, dtype=float) / resolution
        p = lam @ verts
        val, p = M_of_prior(p)
        if val > best_val:
            best_val, best_p, best_lam = val, p, lam

    if nv > 1:
        def neg(z):
            lam = np.exp(z - z.max())
            lam /= lam.sum()
            val, _ = M_of_prior(lam @ verts)
            return -val

        z0 = np.log(np.clip(best_lam, 1e-6, None))
        res = minimize(neg, z0, method="Nelder-Mead",
                       options={"xatol": 1e-4, "fatol": 1e-9, "maxiter": 200})
        lam = np.exp(res.x - res.x.max())
        lam /= lam.sum()
        val, p = M_of_prior(lam @ verts)
        if val > best_val:
            best_val, best_p = val, p
    return best_val, best_p


def schur_monotonicity_check(E: qcore.Ensemble, unitaries, uprobs, R: float,
                             grid_E: SimplexGrid | None = None,
                             grid_F: SimplexGrid | None = None,
                             tol: float = 1e-6) -> bool:
    """Check M(E, R) <= M(F, R) + tol for F = {U_k |phi_i>, p_i a_k}."""
    uprobs = np.asarray(uprobs, dtype=float)
    states = []
    probs = []
    for U, ak in zip(unitaries, uprobs):
        U = np.asarray(U, dtype=complex)
        if not np.allclose(U.conj().T @ U, np.eye(U.shape[0]), atol=1e-10):
            raise ValueError("non-unitary input")
        for i in range(E.m):
            states.append(U @ E.states[i])
            probs.append(E.probs[i] * ak)
    F = qcore.Ensemble(np.array(states), np.array(probs))
    if grid_F is None and F.m not in DEFAULT_RESOLUTION:
        grid_F = SimplexGrid.regular(F, k=6)
    QE, _ = solve_M(E, R, grid=grid_E)
    QF, _ = solve_M(F, R, grid=grid_F)
    return QE <= QF + tol
