"""Group action verification, orbits, and covariant solves."""

import numpy as np
import pytest

from qctradeoff import ensembles, qcore, solver, symmetry


@pytest.fixture
def action():
    return ensembles.bb84_action()


class TestVerifyAction:
    def test_bb84_action_valid(self, bb84, action):
        report = symmetry.verify_action(bb84, action)
        assert report
        assert report.ok

    def test_wrong_unitary_rejected(self, bb84, action):
        bad = symmetry.make_action(action.perms,
                                   [np.eye(2)] * len(action.perms))
        assert not symmetry.verify_action(bb84, bad)

    def test_non_permutation_rejected(self, bb84, action):
        perms = list(action.perms)
        perms[1] = (0, 0, 1, 2)
        bad = symmetry.make_action(perms, list(action.unitaries))
        assert not symmetry.verify_action(bb84, bad)

    def test_missing_identity_rejected(self, bb84, action):
        bad = symmetry.make_action(list(action.perms)[1:],
                                   list(action.unitaries)[1:])
        assert not symmetry.verify_action(bb84, bad)

    def test_non_unitary_rejected(self, bb84, action):
        us = [u.copy() for u in action.unitaries]
        us[1] = us[1] * 2.0
        bad = symmetry.make_action(list(action.perms), us)
        assert not symmetry.verify_action(bb84, bad)

    def test_broken_closure_rejected(self, bb84):
        # Identity plus a single 4-cycle without its powers.
        cyc = (1, 2, 3, 0)
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        bad = symmetry.make_action([(0, 1, 2, 3), cyc], [np.eye(2), rot])
        report = symmetry.verify_action(bb84, bad)
        assert not report


class TestOrbits:
    def test_bb84_transitive(self, action):
        orbs = symmetry.orbits(action, 4)
        assert len(orbs) == 1
        assert sorted(orbs[0]) == [0, 1, 2, 3]

    def test_orbit_sizes_divide_group_order(self, action):
        orbs = symmetry.orbits(action, 4)
        for orb in orbs:
            assert len(action.perms) % len(orb) == 0

    def test_trivial_action_singletons(self):
        triv = symmetry.make_action([(0, 1, 2)], [np.eye(2)])
        assert symmetry.orbits(triv, 3) == [[0], [1], [2]]


class TestSymmetrize:
    def test_uniform_fixed_point(self, action):
        p = np.full(4, 0.25)
        assert np.allclose(symmetry.symmetrize(p, action), p, atol=1e-15)

    def test_idempotent(self, action, rng):
        p = rng.dirichlet(np.ones(4))
        q = symmetry.symmetrize(p, action)
        assert np.allclose(symmetry.symmetrize(q, action), q, atol=1e-12)
        assert q.sum() == pytest.approx(1.0, abs=1e-12)

    def test_transitive_action_gives_uniform(self, action, rng):
        p = rng.dirichlet(np.ones(4))
        assert np.allclose(symmetry.symmetrize(p, action), 0.25, atol=1e-12)


class TestCovariantSolve:
    def test_matches_unrestricted(self, bb84, action):
        grid = solver.SimplexGrid.regular(bb84, k=16)
        Qfull, _ = solver.solve_M(bb84, 1.0, grid=grid)
        Qcov, _, j_count = symmetry.covariant_solve_M(bb84, action, 1.0, k=16)
        assert Qcov == pytest.approx(Qfull, abs=1e-9)
        assert j_count <= len(action.perms) * (bb84.m + 1)

    def test_covariant_witness_support_bound(self, bb84, action):
        _, witness, j_count = symmetry.covariant_solve_M(bb84, action, 0.5, k=16)
        assert j_count == len(witness)
        w = np.array([pt.w for pt in witness])
        xs = np.array([pt.x for pt in witness])
        assert np.allclose(w @ xs, bb84.probs, atol=1e-8)

    def test_non_invariant_prior_rejected(self, action):
        E = qcore.Ensemble(ensembles.bb84_states(np.pi / 8),
                           np.array([0.4, 0.2, 0.2, 0.2]))
        with pytest.raises(ValueError):
            symmetry.covariant_solve_M(E, action, 0.5, k=8)

    def test_avs_transitive(self, bb84, action):
        val = symmetry.avs_transitive(bb84.states, 1.0, action, k=16)
        Qfull, _ = solver.solve_M(bb84, 1.0,
                                  grid=solver.SimplexGrid.regular(bb84, k=16))
        assert val == pytest.approx(Qfull, abs=1e-9)
