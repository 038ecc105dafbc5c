"""Entropy, fidelity, and information-quantity unit tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qctradeoff import ensembles, qcore


def random_kernel(rng, m, J):
    K = rng.dirichlet(np.full(J, 1.0), size=m)
    return K


class TestScalarEntropies:
    def test_shannon_uniform(self):
        assert qcore.shannon_entropy(np.full(8, 0.125)) == pytest.approx(3.0, abs=1e-12)

    def test_shannon_point_mass(self):
        assert qcore.shannon_entropy([1.0, 0.0, 0.0]) == 0.0

    def test_binary_entropy_symmetric(self):
        assert qcore.binary_entropy(0.3) == pytest.approx(qcore.binary_entropy(0.7), abs=1e-14)
        assert qcore.binary_entropy(0.5) == pytest.approx(1.0, abs=1e-14)
        assert qcore.binary_entropy(0.0) == 0.0

    def test_eta_piecewise(self):
        # -x log2 x on [0, 1/4], constant 1/2 beyond.
        assert qcore.eta(0.0) == 0.0
        assert qcore.eta(0.25) == pytest.approx(0.5, abs=1e-14)
        assert qcore.eta(0.9) == 0.5
        assert qcore.eta(22.6) == 0.5
        x = 0.1
        assert qcore.eta(x) == pytest.approx(-x * np.log2(x), abs=1e-14)

    def test_eta_vectorized(self):
        out = qcore.eta(np.array([0.0, 0.25, 3.0]))
        assert np.allclose(out, [0.0, 0.5, 0.5])

    def test_fannes_bound(self):
        # eps log d + eta(eps); tiny eps gives a tiny bound.
        assert qcore.fannes_bound(2, 0.0) == 0.0
        assert qcore.fannes_bound(4, 0.01) == pytest.approx(
            0.01 * 2.0 + qcore.eta(0.01), abs=1e-14)


class TestEnsembleType:
    def test_validation_rejects_unnormalized_state(self):
        with pytest.raises(ValueError):
            qcore.Ensemble(np.array([[1.0, 1.0], [1.0, 0.0]], dtype=complex),
                           np.array([0.5, 0.5]))

    def test_validation_rejects_bad_probs(self):
        states = np.eye(2, dtype=complex)
        with pytest.raises(ValueError):
            qcore.Ensemble(states, np.array([0.7, 0.7]))
        with pytest.raises(ValueError):
            qcore.Ensemble(states, np.array([1.5, -0.5]))

    def test_mix_is_density_matrix(self, pair):
        rho = pair.average_state()
        qcore.check_density_matrix(rho)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)

    def test_pair_entropy_reference(self, pair):
        assert pair.entropy() == pytest.approx(0.6008760366928562, abs=1e-12)

    def test_overlap_gram_hermitian(self, bb84):
        g = bb84.overlap_gram()
        assert np.allclose(g, g.conj().T, atol=1e-12)
        assert np.allclose(np.diag(g).real, 1.0, atol=1e-12)


class TestVonNeumann:
    def test_pure_state_zero(self, rng):
        psi = ensembles.random_pure_states(rng, 1, 4)[0]
        assert qcore.von_neumann_entropy(qcore.projector(psi)) == pytest.approx(0.0, abs=1e-10)

    def test_maximally_mixed(self):
        assert qcore.von_neumann_entropy(np.eye(4) / 4.0) == pytest.approx(2.0, abs=1e-12)

    def test_tensor_additivity(self, rng):
        E1 = ensembles.random_ensemble(rng, 3, 2)
        E2 = ensembles.random_ensemble(rng, 2, 3)
        r1, r2 = E1.average_state(), E2.average_state()
        s12 = qcore.von_neumann_entropy(np.kron(r1, r2))
        assert s12 == pytest.approx(
            qcore.von_neumann_entropy(r1) + qcore.von_neumann_entropy(r2), abs=1e-9)


class TestFidelity:
    def test_identical_states(self, rng):
        rho = ensembles.random_ensemble(rng, 3, 3).average_state()
        assert qcore.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal_pure(self):
        a = qcore.projector(np.array([1.0, 0.0], dtype=complex))
        b = qcore.projector(np.array([0.0, 1.0], dtype=complex))
        assert qcore.fidelity(a, b) == pytest.approx(0.0, abs=1e-12)

    def test_pure_pure_overlap(self, rng):
        s = ensembles.random_pure_states(rng, 2, 3)
        f = qcore.fidelity(qcore.projector(s[0]), qcore.projector(s[1]))
        assert f == pytest.approx(abs(np.vdot(s[0], s[1])) ** 2, abs=1e-10)

    def test_symmetric_and_bounded(self, rng):
        r1 = ensembles.random_ensemble(rng, 3, 2).average_state()
        r2 = ensembles.random_ensemble(rng, 2, 2).average_state()
        f12 = qcore.fidelity(r1, r2)
        f21 = qcore.fidelity(r2, r1)
        assert f12 == pytest.approx(f21, abs=1e-9)
        assert 0.0 <= f12 <= 1.0 + 1e-12

    def test_pure_vs_mixed_rank_one_shortcut(self, rng):
        psi = ensembles.random_pure_states(rng, 1, 3)[0]
        rho = ensembles.random_ensemble(rng, 4, 3).average_state()
        f = qcore.fidelity(qcore.projector(psi), rho)
        assert f == pytest.approx(float((psi.conj() @ rho @ psi).real), abs=1e-10)


class TestHolevo:
    def test_pure_ensemble_chi_is_entropy(self, pair):
        members = [(qcore.projector(s), p) for s, p in zip(pair.states, pair.probs)]
        assert qcore.holevo_chi(members) == pytest.approx(pair.entropy(), abs=1e-10)

    def test_chi_bounded_by_log_dim(self, rng):
        E = ensembles.random_ensemble(rng, 5, 3)
        members = [(qcore.projector(s), p) for s, p in zip(E.states, E.probs)]
        assert qcore.holevo_chi(members) <= np.log2(3) + 1e-9


class TestInformationChainRule:
    def test_identity_kernel(self, pair):
        K = np.eye(2)
        assert qcore.classical_info(pair, K) == pytest.approx(1.0, abs=1e-12)
        assert qcore.conditional_chi(pair, K) == pytest.approx(0.0, abs=1e-12)

    def test_trivial_kernel(self, pair):
        K = np.ones((2, 1))
        assert qcore.classical_info(pair, K) == pytest.approx(0.0, abs=1e-12)
        assert qcore.conditional_chi(pair, K) == pytest.approx(pair.entropy(), abs=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000), m=st.integers(2, 4),
           d=st.integers(2, 4), J=st.integers(1, 5))
    def test_chain_rule_random(self, seed, m, d, J):
        rng = np.random.default_rng(seed)
        E = ensembles.random_ensemble(rng, m, d)
        K = random_kernel(rng, m, J)
        lhs = qcore.classical_info(E, K) + qcore.conditional_chi(E, K)
        assert lhs == pytest.approx(qcore.joint_chi(E, K), abs=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000), m=st.integers(2, 4), J=st.integers(1, 5))
    def test_information_bounds(self, seed, m, J):
        rng = np.random.default_rng(seed)
        E = ensembles.random_ensemble(rng, m, 2)
        K = random_kernel(rng, m, J)
        assert qcore.classical_info(E, K) <= qcore.shannon_entropy(E.probs) + 1e-9
        assert -1e-12 <= qcore.conditional_chi(E, K) <= E.entropy() + 1e-9

    def test_kernel_validation(self, pair):
        with pytest.raises(ValueError):
            qcore.validate_kernel(np.array([[0.5, 0.4], [0.5, 0.5]]), 2)
        with pytest.raises(ValueError):
            qcore.validate_kernel(np.array([[1.2, -0.2], [0.5, 0.5]]), 2)
