"""Exact small-dimension quantum/classical information primitives.

States live in dimension d <= ~16.  Everything is a pure function on
immutable numpy data, logarithms are base 2 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ATOL_TYPE = 1e-12    # type invariants
ATOL_IDENT = 1e-9    # derived identities

_LOG2 = np.log(2.0)


def check_pure_state(psi: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Validate a complex amplitude vector of unit norm and return it."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("pure state must be a vector")
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > atol:
        raise ValueError(f"pure state norm^2 = {norm2} is not 1 within {atol}")
    return psi


def check_density_matrix(rho: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Validate a Hermitian, PSD, unit-trace matrix and return it."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if not np.allclose(rho, rho.conj().T, atol=atol, rtol=0.0):
        raise ValueError("density matrix is not Hermitian within tolerance")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > atol:
        raise ValueError(f"density matrix trace = {tr} is not 1 within {atol}")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10:
        raise ValueError(f"density matrix has eigenvalue {evals.min()} < -1e-10")
    return rho


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class Ensemble:
    """A pure-state source: m states |phi_i> of shared dimension d with prior p."""

    states: np.ndarray  # (m, d) complex, rows are unit vectors
    probs: np.ndarray   # (m,)
    _projectors: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = np.asarray(self.states, dtype=complex)
        probs = np.asarray(self.probs, dtype=float)
        if states.ndim != 2 or states.shape[0] < 1:
            raise ValueError("need at least one state, as rows of a 2-D array")
        if probs.shape != (states.shape[0],):
            raise ValueError("probs length must match number of states")
        norms = np.einsum("id,id->i", states.conj(), states).real
        if np.max(np.abs(norms - 1.0)) > ATOL_TYPE:
            raise ValueError("states must be normalized within 1e-12")
        if probs.min() < -ATOL_TYPE or abs(probs.sum() - 1.0) > ATOL_TYPE:
            raise ValueError("probs must be nonnegative and sum to 1 within 1e-12")
        states.setflags(write=False)
        probs.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "probs", probs)
        projs = np.einsum("ia,ib->iab", states, states.conj())
        projs.setflags(write=False)
        object.__setattr__(self, "_projectors", projs)

    @property
    def m(self) -> int:
        return self.states.shape[0]

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def projectors(self) -> np.ndarray:
        """Stack of rank-one projectors |phi_i><phi_i|, shape (m, d, d)."""
        return self._projectors

    def mix(self, x: np.ndarray) -> np.ndarray:
        """f(x) = sum_i x_i |phi_i><phi_i| for a distribution x over states."""
        return np.einsum("i,iab->ab", np.asarray(x, dtype=float), self._projectors)

    def average_state(self) -> np.ndarray:
        return self.mix(self.probs)

    def entropy(self) -> float:
        """S(E), entropy of the average state in bits."""
        return von_neumann_entropy(self.average_state(), validate=False)

    def overlap_gram(self) -> np.ndarray:
        """Gram matrix <phi_i|phi_j>."""
        return self.states.conj() @ self.states.T


def validate_kernel(K: np.ndarray, m: int | None = None) -> np.ndarray:
    """Validate a row-stochastic conditional distribution p(j|i)."""
    K = np.asarray(K, dtype=float)
    if K.ndim != 2:
        raise ValueError("kernel must be a matrix p(j|i)")
    if m is not None and K.shape[0] != m:
        raise ValueError("kernel rows must match ensemble size")
    if K.min() < -ATOL_TYPE:
        raise ValueError("kernel entries must be nonnegative")
    if np.max(np.abs(K.sum(axis=1) - 1.0)) > ATOL_TYPE:
        raise ValueError("kernel rows must sum to 1 within 1e-12")
    return K


def shannon_entropy(p) -> float:
    """H(p) in bits with 0 log 0 := 0."""
    p = np.asarray(p, dtype=float)
    if p.min() < -1e-12:
        raise ValueError("negative probability")
    p = np.clip(p, 0.0, 1.0)
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum())

def binary_entropy(x: float) -> float:
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise ValueError("argument outside [0,1]")
    return shannon_entropy([x, 1.0 - x])

def eta(x) -> np.ndarray | float:
    """-x log2 x for x <= 1/4, constant 1/2 beyond; continuous and concave."""
    x = np.asarray(x, dtype=float)
    if np.any(x < -1e-15):
        raise ValueError("negative input")
    x = np.clip(x, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        low = np.where(x > 0.0, -x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)
    out = np.where(x <= 0.25, low, 0.5)
    return float(out) if out.ndim == 0 else out

def fannes_bound(d: int, eps: float) -> float:
    """Entropy continuity bound d * eta(eps / d)."""
    if eps < 0.0:
        raise ValueError("negative input")
    return d * eta(eps / d)


def entropy_of_probs(lams: np.ndarray) -> float:
    """Entropy of a clipped eigenvalue vector in bits."""
    lams = np.clip(lams, 0.0, 1.0)
    nz = lams[lams > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def von_neumann_entropy(rho: np.ndarray, validate: bool = True) -> float:
    """S(rho) = -Tr rho log2 rho from the eigenvalues."""
    if validate:
        rho = check_density_matrix(rho)
    return entropy_of_probs(np.linalg.eigvalsh(rho))


def fidelity(rho: np.ndarray, omega: np.ndarray) -> float:
    """Uhlmann fidelity ( Tr sqrt(w^1/2 rho w^1/2) )^2, in [0,1]."""
    rho = np.asarray(rho, dtype=complex)
    omega = np.asarray(omega, dtype=complex)
    if rho.shape != omega.shape:
        raise ValueError("dimension mismatch")
    # Rank-one shortcut: F = <w|rho|w> when omega is pure (and symmetrically).
    for a, b in ((rho, omega), (omega, rho)):
        evals, evecs = np.linalg.eigh(b)
        if evals[:-1].max(initial=0.0) < 1e-12:
            v = evecs[:, -1]
            return float(np.clip((v.conj() @ a @ v).real, 0.0, 1.0))
    ev_w, U = np.linalg.eigh(omega)
    sq = U @ (np.sqrt(np.clip(ev_w, 0.0, None))[:, None] * U.conj().T)
    inner = sq @ rho @ sq
    lams = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(np.clip(np.sqrt(lams).sum() ** 2, 0.0, 1.0))


def holevo_chi(mixed_ensemble: list[tuple[np.ndarray, float]]) -> float:
    """chi = S(sum_k p_k rho_k) - sum_k p_k S(rho_k)."""
    if not mixed_ensemble:
        raise ValueError("empty ensemble")
    probs = np.array([p for _, p in mixed_ensemble], dtype=float)
    if abs(probs.sum() - 1.0) > ATOL_TYPE:
        raise ValueError("probs must sum to 1")
    avg = sum(p * np.asarray(rho, dtype=complex) for rho, p in mixed_ensemble)
    chi = von_neumann_entropy(avg, validate=False)
    for rho, p in mixed_ensemble:
        if p > 0.0:
            chi -= p * von_neumann_entropy(np.asarray(rho, dtype=complex), validate=False)
    return max(chi, 0.0)


def _posteriors(E: Ensemble, K: np.ndarray):
    """Output marginal q_j and Bayes posteriors q(i|j) for q_j > 0."""
    joint = E.probs[:, None] * K          # p_i p(j|i)
    q = joint.sum(axis=0)
    keep = q > 0.0
    post = joint[:, keep] / q[keep]
    return q[keep], post                  # post[:, j] is q(.|j)


def classical_info(E: Ensemble, K: np.ndarray) -> float:
    """S(A:C) = H(p) - sum_j q_j H(q(.|j)), the classical mutual information."""
    K = validate_kernel(K, E.m)
    q, post = _posteriors(E, K)
    hcond = sum(qj * shannon_entropy(post[:, j]) for j, qj in enumerate(q))
    return max(shannon_entropy(E.probs) - hcond, 0.0)


def conditional_chi(E: Ensemble, K: np.ndarray) -> float:
    """S(A:B|C) = sum_j q_j S(f(q(.|j))), pure conditional members."""
    K = validate_kernel(K, E.m)
    q, post = _posteriors(E, K)
    return float(sum(
        qj * von_neumann_entropy(E.mix(post[:, j]), validate=False)
        for j, qj in enumerate(q)
    ))


def joint_chi(E: Ensemble, K: np.ndarray) -> float:
    """S(A:BC), Holevo information of the joint state-plus-symbol ensemble.

    Equals classical_info + conditional_chi by the chain rule; computed
    directly (block-diagonal average over j) as an independent route.
    """
    K = validate_kernel(K, E.m)
    q, post = _posteriors(E, K)
    # The average BC state sum_j q_j f(q(.|j)) (x) |j><j| is block diagonal
    # over j, so its entropy is read off the concatenated scaled block
    # spectra.  The member for source symbol i is phi_i (x) K(.|i), mixed
    # over the classical register with entropy H(K(.|i)).
    spectra = np.concatenate([
        qj * np.clip(np.linalg.eigvalsh(E.mix(post[:, j])), 0.0, 1.0)
        for j, qj in enumerate(q)
    ])
    member_h = sum(p_i * shannon_entropy(K[i]) for i, p_i in enumerate(E.probs))
    return entropy_of_probs(spectra) - member_h
