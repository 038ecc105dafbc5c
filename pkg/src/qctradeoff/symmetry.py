"""Group-covariant reductions of the trade-off solver.

A finite group acts on state labels through permutations paired with
unitaries satisfying |phi_{g(i)}><phi_{g(i)}| = U_g |phi_i><phi_i| U_g+.
When the prior is invariant, optimal decompositions can be taken
orbit-closed, which shrinks the LP by roughly a factor |G|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qcore, solver


@dataclass(frozen=True)
class GroupAction:
    perms: tuple          # tuple of tuples sigma with sigma[i] = g(i)
    unitaries: tuple      # matching tuple of d x d unitaries

    def __len__(self):
        return len(self.perms)


def make_action(perms, unitaries) -> GroupAction:
    return GroupAction(perms=tuple(tuple(int(v) for v in s) for s in perms),
                       unitaries=tuple(np.asarray(U, dtype=complex) for U in unitaries))


@dataclass
class ActionReport:
    ok: bool
    detail: str | None = None

    def __bool__(self):
        return self.ok


def verify_action(E: qcore.Ensemble, action: GroupAction,
                  tol: float = 1e-9) -> ActionReport:
    """Check the projective action property, identity, and closure."""
    m = E.m
    projs = E.projectors
    for g, (sigma, U) in enumerate(zip(action.perms, action.unitaries)):
        if sorted(sigma) != list(range(m)):
            return ActionReport(False, f"element {g}: not a permutation of 0..{m-1}")
        if not np.allclose(U.conj().T @ U, np.eye(U.shape[0]), atol=1e-9):
            return ActionReport(False, f"element {g}: unitary check failed")
        for i in range(m):
            lhs = U @ projs[i] @ U.conj().T
            gap = np.abs(lhs - projs[sigma[i]]).max()
            if gap > tol:
                return ActionReport(
                    False, f"element {g}, state {i}: projector gap {gap:.2e}")
    perm_set = set(action.perms)
    ident = tuple(range(m))
    if ident not in perm_set:
        return ActionReport(False, "identity element missing")
    for s1 in action.perms:
        for s2 in action.perms:
            comp = tuple(s1[s2[i]] for i in range(m))
            if comp not in perm_set:
                return ActionReport(False, f"closure violated by {s1} o {s2}")
    return ActionReport(True)


def orbits(action: GroupAction, m: int) -> list[list[int]]:
    """Orbit partition of {0..m-1} via union-find over the permutations."""
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for sigma in action.perms:
        for i in range(m):
            ri, rj = find(i), find(sigma[i])
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [sorted(v) for v in sorted(groups.values())]


def symmetrize(p: np.ndarray, action: GroupAction) -> np.ndarray:
    """G-average (1/|G|) sum_g p^g, a fixed point of every relabeling."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    for sigma in action.perms:
        inv = np.argsort(np.array(sigma))
        out += p[inv]
    return out / len(action.perms)


def _orbit_of_point(x: np.ndarray, inv_perms) -> set[tuple]:
    return {tuple(np.round(x[inv], 12)) for inv in inv_perms}


def covariant_solve_M(E: qcore.Ensemble, action: GroupAction, R: float,
                      k: int | None = None, refine: bool = True,
                      symmetrize_prior: bool = False):
    """solve_M restricted to orbit-closed decompositions.

    One LP weight per orbit class of grid points; the class column is the
    orbit average of the barycenters while S and H are the (shared) values
    of any member.  Returns (Q, witness, j_count) where j_count is the size
    of the expanded covariant kernel support, <= |G| (t + 1).
    """
    p = E.probs
    psym = symmetrize(p, action)
    if np.max(np.abs(psym - p)) > 1e-9:
        if not symmetrize_prior:
            raise ValueError("prior is not G-invariant; pass symmetrize_prior=True")
        p = psym

    rep = verify_action(E, action)
    if not rep:
        raise ValueError(f"invalid group action: {rep.detail}")

    m = E.m
    if k is None:
        k = solver.DEFAULT_RESOLUTION.get(m, 8)
    inv_perms = [np.argsort(np.array(sigma)) for sigma in action.perms]

    base = solver._simplex_points(m, k)
    base = np.vstack([base, p[None, :]])
    classes: dict[tuple, np.ndarray] = {}
    for x in base:
        orb = sorted(_orbit_of_point(x, inv_perms))
        key = orb[-1]
        if key not in classes:
            classes[key] = np.array(orb, dtype=float)

    def class_columns(reps):
        orbs = [np.array(sorted(_orbit_of_point(x, inv_perms)), dtype=float)
                for x in reps]
        xbar = np.array([o.mean(axis=0) for o in orbs])
        S, H = solver._annotate(E, np.array([o[0] for o in orbs]))
        return orbs, xbar, S, H

    reps = [np.array(key) for key in classes]
    orbs, xbar, S, H = class_columns(reps)
    Hp = qcore.shannon_entropy(p)
    R = min(max(R, 0.0), Hp)
    value, w, support = solver._solve_weights(xbar, S, H, p, Hp, R, "M")

    pts = [reps[i] for i in support]
    weights = w
    sup_idx = support
    if refine and m <= 8:
        import itertools
        step = 0.5 / k
        for _ in range(solver.REFINE_MAX_ITER):
            cand = [p] + pts
            for x in pts:
                for a, b in itertools.permutations(range(m), 2):
                    if x[b] < 1e-15:
                        continue
                    d = min(step, x[b])
                    x2 = x.copy()
                    x2[a] += d
                    x2[b] -= d
                    cand.append(x2)
            orbs_c, xbar_c, S_c, H_c = class_columns(cand)
            try:
                val, w_c, sup_c = solver._solve_weights(xbar_c, S_c, H_c, p, Hp, R, "M")
            except Exception:
                break
            if val < value - solver.REFINE_TOL:
                value = val
                pts = [cand[i] for i in sup_c]
            else:
                step *= 0.5
                if step < 1e-7:
                    break
        reps = [p] + pts
        orbs, xbar, S, H = class_columns(reps)
        value, weights, sup_idx = solver._solve_weights(xbar, S, H, p, Hp, R, "M")

    witness = []
    j_count = 0
    for i in sup_idx:
        orb = orbs[i]
        j_count += orb.shape[0]
        for member in orb:
            witness.append(solver.DecompositionPoint(
                x=member, w=float(weights[i] / orb.shape[0])))
    return max(value, 0.0), witness, j_count


def avs_transitive(E_states: np.ndarray, R: float, action: GroupAction,
                   k: int | None = None):
    """AVS value for a transitive action: M at the uniform prior."""
    E_states = np.asarray(E_states, dtype=complex)
    m = E_states.shape[0]
    E = qcore.Ensemble(E_states, np.full(m, 1.0 / m))
    if len(orbits(action, m)) != 1:
        raise ValueError("action is not transitive")
    Q, _, _ = covariant_solve_M(E, action, R, k=k)
    return Q
