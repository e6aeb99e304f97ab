import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

import cvsim as cv
from cvsim import fock
from conftest import random_single_mode_physical


class TestTmsvConstruction:
    def test_zero_squeezing_is_double_vacuum(self):
        st = fock.build_tmsv_fock(0.0, cutoff=10)
        assert_allclose(st.matrix, fock.vacuum_fock(2, 10).matrix)

    def test_photon_number_distribution(self):
        zeta, cutoff = 0.5, 20
        st = fock.build_tmsv_fock(zeta, cutoff)
        q = np.tanh(zeta)
        diag = np.real(np.diagonal(st.matrix)).reshape(cutoff + 1, cutoff + 1)
        expected = (1.0 - q * q) * q ** (2 * np.arange(cutoff + 1))
        assert_allclose(np.diagonal(diag), expected, atol=1e-12)
        assert_allclose(diag - np.diag(np.diagonal(diag)), 0.0, atol=1e-12)

    def test_covariance_matches_closed_form(self):
        st = fock.build_tmsv_fock(0.5, cutoff=25)
        kappa, gamma = fock.covariance_from_fock(st)
        assert_allclose(kappa, 0.0, atol=1e-12)
        assert np.max(np.abs(gamma - cv.tmsv_state(0.5).gamma)) <= 1e-6

    def test_truncation_budget_enforced(self):
        with pytest.raises(ValueError):
            fock.build_tmsv_fock(2.0, cutoff=5, max_truncation=1e-9)

    def test_reported_weight(self):
        st = fock.build_tmsv_fock(0.4, cutoff=15)
        q = np.tanh(0.4)
        assert_allclose(st.trunc_weight, q ** 32, atol=1e-15)


class TestLossChannel:
    def test_full_transmission_is_identity(self):
        st = fock.build_tmsv_fock(0.3, cutoff=12)
        out = fock.apply_loss_fock(st, 0, 1.0)
        assert_allclose(out.matrix, st.matrix)

    def test_full_loss_resets_to_vacuum(self):
        st = fock.number_state_fock([1], cutoff=8)
        out = fock.apply_loss_fock(st, 0, 0.0)
        assert_allclose(out.matrix, fock.vacuum_fock(1, 8).matrix, atol=1e-12)

    def test_trace_preserved(self):
        st = fock.build_tmsv_fock(0.4, cutoff=20)
        out = fock.apply_loss_fock(st, 0, 0.75)
        assert abs(out.trace() - st.trace()) <= 1e-10

    def test_matches_explicit_ancilla_construction(self):
        # same channel, done the slow way: attach a vacuum ancilla, apply
        # the two-mode beamsplitter unitary, trace the ancilla out
        cutoff, tau = 12, 0.7
        d = cutoff + 1
        st = fock.gaussian_fock(cv.squeezed_state(0.35, 0.4).gamma, cutoff=cutoff)
        a = np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1)
        theta = np.arccos(np.sqrt(tau))
        u = expm(theta * (np.kron(a.T, a) - np.kron(a, a.T)))
        anc = np.zeros((d, d), dtype=complex)
        anc[0, 0] = 1.0
        joint = np.kron(st.matrix, anc)
        joint = u @ joint @ u.conj().T
        joint = joint.reshape(d, d, d, d).trace(axis1=1, axis2=3)
        out = fock.apply_loss_fock(st, 0, tau)
        assert np.max(np.abs(out.matrix - joint)) <= 1e-12

    def test_degraded_tmsv_covariance(self):
        zeta, tau = 0.3, 0.8
        st = fock.build_tmsv_fock(zeta, cutoff=25)
        st = fock.apply_loss_fock(st, 0, tau)
        st = fock.apply_loss_fock(st, 1, tau)
        _, gamma = fock.covariance_from_fock(st)
        expected = tau * cv.tmsv_state(zeta).gamma + (1.0 - tau) * np.eye(4)
        assert np.max(np.abs(gamma - expected)) <= 1e-5

    def test_transmittance_range(self):
        with pytest.raises(ValueError):
            fock.apply_loss_fock(fock.vacuum_fock(1, 5), 0, 1.5)


class TestLogNegativityFock:
    def test_product_state_zero(self):
        assert abs(fock.log_negativity_fock(fock.vacuum_fock(2, 10))) <= 1e-12

    def test_tmsv_matches_2zeta(self):
        st = fock.build_tmsv_fock(0.3, cutoff=25)
        assert abs(fock.log_negativity_fock(st) - 0.6) <= 1e-4

    def test_degraded_matches_closed_form(self):
        zeta, tau = 0.3, 0.8
        st = fock.build_tmsv_fock(zeta, cutoff=25)
        st = fock.apply_loss_fock(st, 0, tau)
        st = fock.apply_loss_fock(st, 1, tau)
        closed = cv.transmitted_log_negativity(zeta, np.sqrt(tau))
        assert abs(fock.log_negativity_fock(st) - closed) <= 1e-3

    def test_base_two(self):
        st = fock.build_tmsv_fock(0.3, cutoff=25)
        assert abs(fock.log_negativity_fock(st, base="2") - 0.6 / np.log(2.0)) <= 1e-4

    def test_truncation_warning(self):
        st = fock.build_tmsv_fock(1.4, cutoff=8, max_truncation=1.0)
        with pytest.warns(UserWarning):
            fock.log_negativity_fock(st)


class TestWavefunctions:
    def test_orthonormality(self):
        # the default grid clips the n = 25 tail at the 1e-4 level, so the
        # 1e-6 check runs on a grid wide enough for every tabulated state
        grid = np.linspace(-10.0, 10.0, 1201)
        table = fock.QuadratureWavefunctionTable.build(grid, 25)
        overlaps = np.trapezoid(table.values[:, None, :] * table.values[None, :, :], grid, axis=-1)
        assert np.max(np.abs(overlaps - np.eye(26))) <= 1e-6
        table_default = fock.QuadratureWavefunctionTable.build(fock.default_grid(), 25)
        norms = np.trapezoid(table_default.values**2, table_default.grid, axis=-1)
        assert np.max(np.abs(norms - 1.0)) <= 1e-3

    def test_ground_state(self):
        grid = np.linspace(-3, 3, 7)
        table = fock.QuadratureWavefunctionTable.build(grid, 0)
        assert_allclose(table.values[0], np.pi**-0.25 * np.exp(-0.5 * grid**2))


class TestHomodynePovm:
    def test_vacuum_density(self):
        res = fock.homodyne_povm_fock(fock.vacuum_fock(1, 25), 0)
        assert np.max(np.abs(res.pdf - np.exp(-res.grid**2) / np.sqrt(np.pi))) <= 1e-12
        assert abs(np.trapezoid(res.pdf, res.grid) - 1.0) <= 1e-4

    def test_vacuum_is_phase_invariant(self):
        st = fock.vacuum_fock(1, 20)
        a = fock.homodyne_povm_fock(st, 0, phi=0.0)
        b = fock.homodyne_povm_fock(st, 0, phi=np.pi / 2)
        assert np.max(np.abs(a.pdf - b.pdf)) <= 1e-12

    def test_single_photon_density(self):
        res = fock.homodyne_povm_fock(fock.number_state_fock([1], 20), 0)
        expected = 2.0 * res.grid**2 * np.exp(-res.grid**2) / np.sqrt(np.pi)
        assert np.max(np.abs(res.pdf - expected)) <= 1e-12

    def test_squeezed_marginal_matches_gamma(self):
        gamma = cv.squeezed_state(0.4).gamma
        st = fock.gaussian_fock(gamma, cutoff=30)
        res = fock.homodyne_povm_fock(st, 0, phi=0.0)
        var = gamma[0, 0] / 2.0
        expected = np.exp(-res.grid**2 / (2 * var)) / np.sqrt(2 * np.pi * var)
        assert np.max(np.abs(res.pdf - expected)) <= 1e-6

    def test_tmsv_arm_variance(self):
        zeta = 0.4
        st = fock.build_tmsv_fock(zeta, cutoff=25)
        res = fock.homodyne_povm_fock(st, 0)
        second = np.trapezoid(res.grid**2 * res.pdf, res.grid)
        assert abs(second - np.cosh(2 * zeta) / 2.0) <= 1e-6

    def test_conditional_state_matches_gaussian_machinery(self):
        # measuring x on one arm in Fock space reproduces the covariance the
        # Gaussian side assigns to conditioning on that mode (which, in the
        # conjugate-projector naming, is homodyne_project of the p index)
        zeta = 0.4
        st = fock.build_tmsv_fock(zeta, cutoff=25)
        res = fock.homodyne_povm_fock(st, 0, phi=0.0)
        idx = int(np.argmin(np.abs(res.grid - 0.7)))
        cond = fock.FockState(1, 25, res.conditionals[idx].reshape(26, 26))
        kappa, gamma_cond = fock.covariance_from_fock(cond)
        expected = cv.homodyne_project(cv.tmsv_state(zeta).gamma, measured={1}).gamma_out
        assert np.max(np.abs(gamma_cond - expected)) <= 1e-6
        # the conditional mean lands where the arm correlations say it should
        assert kappa[0] != 0.0


class TestPartialTrace:
    def test_tmsv_arm_reduces_to_thermal(self):
        zeta = 0.5
        st = fock.build_tmsv_fock(zeta, cutoff=25)
        arm = fock.partial_trace(st, keep=[0])
        assert abs(arm.trace() - 1.0) <= 1e-10
        _, gamma = fock.covariance_from_fock(arm)
        n_bar = np.sinh(zeta) ** 2
        assert np.max(np.abs(gamma - (2 * n_bar + 1) * np.eye(2))) <= 1e-6

    def test_keep_order_and_shape(self):
        st = fock.build_tmsv_fock(0.3, cutoff=10)
        arm = fock.partial_trace(st, keep=[1])
        assert arm.modes == 1 and arm.matrix.shape == (11, 11)


class TestOverlap:
    def test_identical_pure_states(self):
        st = fock.gaussian_fock(cv.squeezed_signal(0.5).gamma, cutoff=25)
        assert abs(fock.overlap_fock(st, st) - 1.0) <= 1e-10

    def test_orthogonal_number_states(self):
        a = fock.number_state_fock([0], 10)
        b = fock.number_state_fock([1], 10)
        assert abs(fock.overlap_fock(a, b)) <= 1e-12

    def test_rejects_mixed_first_argument(self):
        mixed = fock.gaussian_fock(cv.thermal_state(0.5).gamma, cutoff=25)
        pure = fock.vacuum_fock(1, 25)
        with pytest.raises(ValueError):
            fock.overlap_fock(mixed, pure)

    def test_matches_gaussian_fidelity(self):
        eta = 0.4
        gamma_in = cv.squeezed_signal(eta).gamma
        gamma_rec = cv.teleport(cv.TeleportSetup(gamma_in, 0.5)).gamma_rec
        sig = fock.gaussian_fock(gamma_in, cutoff=30)
        rec = fock.gaussian_fock(gamma_rec, cutoff=30)
        f_gauss = cv.fidelity(gamma_in, gamma_rec)
        assert abs(fock.overlap_fock(sig, rec) - f_gauss) <= 1e-4


class TestGaussianFock:
    def test_roundtrip_random_states(self, rng):
        # moderate states: heavy squeezed-thermal tails converge slowly in
        # the cutoff, which is an oracle capability limit, not a bug
        for _ in range(10):
            gamma = random_single_mode_physical(rng, max_squeeze=0.25, max_n=0.5)
            st = fock.gaussian_fock(gamma, cutoff=40)
            _, out = fock.covariance_from_fock(st)
            assert np.max(np.abs(out - gamma)) <= 1e-8

    def test_positive_unit_trace(self):
        st = fock.gaussian_fock(cv.thermal_state(0.7).gamma, cutoff=30)
        evals = np.linalg.eigvalsh(st.matrix)
        assert evals[0] >= -1e-10
        assert abs(st.trace() - 1.0) <= 1e-10

    def test_thermal_tail_budget(self):
        with pytest.raises(ValueError):
            fock.gaussian_fock(cv.thermal_state(5.0).gamma, cutoff=10, max_truncation=1e-9)
