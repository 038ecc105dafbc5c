"""Named example ensembles and random generators used in tests and docs."""

from __future__ import annotations

import numpy as np

from . import qcore, symmetry


def pair_ensemble() -> qcore.Ensemble:
    """{|0>, |+>} with equal probabilities; S(E) ~ 0.600876."""
    s = 1.0 / np.sqrt(2.0)
    states = np.array([[1.0, 0.0], [s, s]], dtype=complex)
    return qcore.Ensemble(states, np.array([0.5, 0.5]))


def three_state_ensemble() -> qcore.Ensemble:
    """{|0>, |+>, |2>} with equal probabilities in dimension 3."""
    s = 1.0 / np.sqrt(2.0)
    states = np.array([
        [1.0, 0.0, 0.0],
        [s, s, 0.0],
        [0.0, 0.0, 1.0],
    ], dtype=complex)
    return qcore.Ensemble(states, np.full(3, 1.0 / 3.0))


def orthonormal_ensemble(k: int, probs=None) -> qcore.Ensemble:
    states = np.eye(k, dtype=complex)
    p = np.full(k, 1.0 / k) if probs is None else np.asarray(probs, dtype=float)
    return qcore.Ensemble(states, p)


def bb84_states(theta: float) -> np.ndarray:
    """|0>, cos t|0>+sin t|1>, |1>, -sin t|0>+cos t|1>."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([
        [1.0, 0.0],
        [c, s],
        [0.0, 1.0],
        [-s, c],
    ], dtype=complex)


def bb84_ensemble(theta: float = np.pi / 8) -> qcore.Ensemble:
    return qcore.Ensemble(bb84_states(theta), np.full(4, 0.25))


def bb84_action(theta: float = np.pi / 8) -> symmetry.GroupAction:
    """Z2 x Z2 acting on the BB84 labels: rotation by pi/2 and reflection
    along the theta/2 axis (projective: signs are irrelevant)."""
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    a = theta / 2.0
    refl = np.array([[np.cos(2 * a), np.sin(2 * a)],
                     [np.sin(2 * a), -np.cos(2 * a)]])
    ident = np.eye(2)
    perms = [
        (0, 1, 2, 3),          # identity
        (2, 3, 0, 1),          # rotation by pi/2
        (1, 0, 3, 2),          # reflection
        (3, 2, 1, 0),          # rotation o reflection
    ]
    unitaries = [ident, rot, refl, rot @ refl]
    return symmetry.make_action(perms, unitaries)


def concavity_trio():
    """E1 (4 orthonormal), E2 (2 orthonormal in the same space), and the
    half-half mixture with probs (3/8, 3/8, 1/8, 1/8)."""
    E1 = orthonormal_ensemble(4)
    states2 = np.zeros((2, 4), dtype=complex)
    states2[0, 0] = 1.0
    states2[1, 1] = 1.0
    E2 = qcore.Ensemble(states2, np.array([0.5, 0.5]))
    mix = qcore.Ensemble(np.eye(4, dtype=complex),
                         np.array([3 / 8, 3 / 8, 1 / 8, 1 / 8]))
    return E1, E2, mix


def random_pure_states(rng: np.random.Generator, m: int, d: int) -> np.ndarray:
    z = rng.normal(size=(m, d)) + 1j * rng.normal(size=(m, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_ensemble(rng: np.random.Generator, m: int, d: int,
                    dirichlet: float = 2.0) -> qcore.Ensemble:
    states = random_pure_states(rng, m, d)
    probs = rng.dirichlet(np.full(m, dirichlet))
    return qcore.Ensemble(states, probs)


def random_reducible_ensemble(rng: np.random.Generator,
                              blocks: list[tuple[int, int]] | None = None
                              ) -> qcore.Ensemble:
    """Direct sum of small random blocks, so the overlap graph splits."""
    if blocks is None:
        n_blocks = int(rng.integers(2, 4))
        blocks = [(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
                  for _ in range(n_blocks)]
    d_total = sum(d for _, d in blocks)
    states = []
    offset = 0
    for m_b, d_b in blocks:
        sub = random_pure_states(rng, m_b, d_b)
        full = np.zeros((m_b, d_total), dtype=complex)
        full[:, offset:offset + d_b] = sub
        states.append(full)
        offset += d_b
    states = np.vstack(states)
    probs = rng.dirichlet(np.full(states.shape[0], 2.0))
    return qcore.Ensemble(states, probs)
