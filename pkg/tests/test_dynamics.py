import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from src.core.classifier import Case
from src.core.diagonalizer import generalized_parity, unit_vector_matrix
from src.core.dynamics import SpectralPropagator, evolve, stationarity_check
from src.core.errors import ExceptionalPoint, InputError
from src.core.linalg import IDENTITY, SIGMA_3, pauli_decompose
from src.core.metric import Normalization, PhaseVector, metric_nontrivial, metric_trivial


def ghost(m, eps, gamma):
    return np.array([[m - 1j * eps, np.conj(gamma)], [gamma, m + 1j * eps]], dtype=complex)


def rk4(H, psi0, t, step=1e-4):
    psi = np.asarray(psi0, dtype=complex)
    f = lambda y: -1j * (H @ y)  # noqa: E731
    for _ in range(int(round(t / step))):
        k1 = f(psi)
        k2 = f(psi + step / 2 * k1)
        k3 = f(psi + step / 2 * k2)
        k4 = f(psi + step * k3)
        psi = psi + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


class TestEvolve:

    def test_sigma3_half_period(self):
        assert_allclose(evolve(SIGMA_3, (1, 0), np.pi), (-1, 0), atol=1e-15)

    def test_hermitian_preserves_norm(self, rng):
        for _ in range(10):
            A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            psi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi = evolve(A + A.conj().T, psi0, rng.uniform(0, 10))
            assert_allclose(np.linalg.norm(psi), np.linalg.norm(psi0), rtol=1e-12)

    def test_matches_runge_kutta(self, random_hamiltonian):
        H = random_hamiltonian(Case.CASE2)
        psi0 = np.array([0.6, 0.8j])
        assert_allclose(evolve(H, psi0, 1.0), rk4(H, psi0, 1.0), atol=1e-6)

    @pytest.mark.parametrize("case", list(Case))
    def test_matches_matrix_exponential(self, case, random_hamiltonian):
        H = random_hamiltonian(case)
        propagator = SpectralPropagator(H)
        for t in (0.0, 0.3, 1.7):
            assert_allclose(propagator.propagator(t), expm(-1j * H * t), atol=1e-10)

    def test_exceptional_has_no_spectral_form(self):
        with pytest.raises(ExceptionalPoint):
            SpectralPropagator(ghost(1, 1, 1))

    @pytest.mark.parametrize("psi0", [(0, 0), (1, 2, 3), (np.nan, 1)])
    def test_rejects_bad_state(self, psi0):
        with pytest.raises(InputError):
            evolve(SIGMA_3, psi0, 1.0)

    @pytest.mark.parametrize("scale", [0.0, 1.0, 2.5])
    def test_scalar_hamiltonian(self, scale):
        H = scale * IDENTITY
        psi0 = np.array([0.6, 0.8j])
        for t in (0.0, 0.7, 3.0):
            assert_allclose(evolve(H, psi0, t), np.exp(-1j * scale * t) * psi0, atol=1e-15)
            assert_allclose(SpectralPropagator(H).propagator(t), expm(-1j * H * t), atol=1e-14)

    def test_diagonal_degenerate_free_of_exceptional_point(self):
        H = np.diag([1 - 1j, 1 - 1j])
        assert_allclose(evolve(H, (1, 1), 2.0), np.exp(-2j * (1 - 1j)) * np.ones(2), atol=1e-14)

    def test_times_must_increase(self):
        with pytest.raises(InputError):
            SpectralPropagator(SIGMA_3).expectation_series(IDENTITY, (1, 0), [0.0, 1.0, 1.0])


class TestStationarity:

    def test_hermitian_norm(self, rng):
        A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        report = stationarity_check(A + A.conj().T, IDENTITY, psi0=(0.6, 0.8))
        assert len(report.times) == 100
        assert report.max_drift <= 1e-12

    def test_unbroken_ghost(self):
        H = ghost(0.5, 0.3, 1 + 0.2j)
        eta = metric_trivial(H).eta
        assert stationarity_check(H, eta).max_drift <= 1e-9

    def test_identity_control_drifts(self):
        H = ghost(0.5, 0.3, 1 + 0.2j)
        assert stationarity_check(H, IDENTITY).max_drift > 1e-3

    def test_broken_ghost_indefinite_metric(self):
        H = ghost(1, 2, 1)
        eta = metric_nontrivial(H, Normalization(1.3, 0.4 + 0.2j), PhaseVector(0.5)).eta
        report = stationarity_check(H, eta, psi0=(1, 0.3 + 0.2j))
        assert report.times[-1] == 10.0
        assert report.max_drift <= 1e-9
        assert np.linalg.norm(evolve(H, (1, 0), 10.0)) > 1e6

    @pytest.mark.parametrize("case", [Case.CASE1, Case.CASE2])
    def test_random_pseudo_hermitian(self, case, random_hamiltonian, random_normalization):
        for _ in range(10):
            H = random_hamiltonian(case)
            if case is Case.CASE1:
                eta = metric_trivial(H, random_normalization()).eta
            else:
                eta = metric_nontrivial(H, random_normalization(), PhaseVector(1.1)).eta
            report = stationarity_check(H, eta, psi0=(0.3, 1j))
            assert report.max_drift <= 1e-9 * max(1.0, np.max(np.abs(eta)))

    def test_anti_pseudo_hermitian_with_anticommuting_b(self):
        H = ghost(0, 2, 1)
        eta = metric_trivial(H, case=Case.CASE3).eta
        n = pauli_decompose(unit_vector_matrix(H, Case.CASE3)).a
        B = generalized_parity(n)
        assert_allclose(B @ H, -H @ B, atol=1e-12)
        report = stationarity_check(H, eta, B, psi0=(1, 1j))
        assert report.max_drift <= 1e-9

    @pytest.mark.parametrize("scale", [0.0, 1.0, 2.5])
    def test_scalar_hamiltonian_conserves_everything(self, scale):
        report = stationarity_check(scale * IDENTITY, np.diag([2.0, 0.5]), psi0=(1, 1j))
        assert report.values[0] == pytest.approx(2.5)
        assert report.max_drift <= 1e-14

    def test_report_rows(self):
        report = stationarity_check(SIGMA_3, IDENTITY, times=[0.0, 0.5])
        rows = report.rows()
        assert rows[0] == (0.0, 1.0, 0.0)
        assert report.to_dict()["max_drift"] == report.max_drift
