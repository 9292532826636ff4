import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.classifier import (Case, HermiticityKind, PhaseKind, classify,
                                 eigenvalue_constraints, is_hermitian, key_quantities)
from src.core.diagonalizer import eigenvalues
from src.core.errors import NotClassifiable
from src.core.linalg import SIGMA_1


def ghost(m, eps, gamma):
    return np.array([[m - 1j * eps, np.conj(gamma)], [gamma, m + 1j * eps]], dtype=complex)


class TestKeyQuantities:

    def test_ghost_values(self):
        q = key_quantities(ghost(1, 2, 1))
        assert_allclose(q.sum, 2)
        assert_allclose(q.disc, -12)
        assert_allclose(q.i_sum, 2j)
        assert_allclose(q.i_disc, 12)

    def test_diagonal(self):
        q = key_quantities(np.diag([1, 2]))
        assert_allclose(q.sum, 3)
        assert_allclose(q.disc, 1)

    def test_ghost_discriminant(self, rng):
        for _ in range(20):
            m, eps = rng.uniform(-2, 2, 2)
            gamma = complex(*rng.uniform(-2, 2, 2))
            q = key_quantities(ghost(m, eps, gamma))
            assert_allclose(q.disc, 4 * (abs(gamma) ** 2 - eps ** 2), atol=1e-13)


class TestClassify:

    def test_broken_ghost(self):
        result = classify(ghost(1, 2, 1))
        assert result.kind is HermiticityKind.PSEUDO
        assert result.phase_if_pseudo is PhaseKind.NONTRIVIAL
        assert result.phase_if_anti is None
        assert result.case_labels == (Case.CASE2,)

    def test_massless_ghost_is_both(self):
        result = classify(ghost(0, 1, 2))
        assert result.kind is HermiticityKind.BOTH
        assert result.phase_if_pseudo is PhaseKind.TRIVIAL
        assert result.phase_if_anti is PhaseKind.NONTRIVIAL
        assert result.case_labels == (Case.CASE1, Case.CASE4)

    def test_exceptional(self):
        result = classify(ghost(1, 1, 1))
        assert result.exceptional
        assert result.phase_if_pseudo is PhaseKind.EXCEPTIONAL
        assert result.case_labels == ()

    def test_neither(self):
        with pytest.raises(NotClassifiable) as info:
            classify(np.array([[1 + 1j, 0], [0, 2]]))
        error = info.value
        assert error.details["kind"] == "neither"
        assert error.details["diagnostics"]["im_sum"] == pytest.approx(1.0)

    @pytest.mark.parametrize("case", list(Case))
    def test_random_cases(self, case, random_hamiltonian):
        for _ in range(50):
            assert case in classify(random_hamiltonian(case)).case_labels

    @pytest.mark.parametrize("case, rotated", [
        (Case.CASE1, Case.CASE3),
        (Case.CASE2, Case.CASE4),
    ])
    def test_multiplying_by_i_swaps_kind(self, case, rotated, random_hamiltonian):
        for _ in range(20):
            H = random_hamiltonian(case)
            assert rotated in classify(1j * H).case_labels

    @pytest.mark.parametrize("case", list(Case))
    def test_scaling_invariance(self, case, random_hamiltonian):
        H = random_hamiltonian(case)
        base = classify(H)
        for lam in (1e-3, 0.5, 7.0, 1e3):
            scaled = classify(lam * H)
            assert scaled.kind is base.kind
            assert scaled.case_labels == base.case_labels

    def test_to_dict(self):
        payload = classify(ghost(0, 1, 2)).to_dict()
        assert payload["kind"] == "both"
        assert payload["case_labels"] == ["case1", "case4"]
        assert payload["exceptional"] is False
        assert "det" in payload["diagnostics"]


class TestHermiticity:

    def test_sigma1(self):
        assert is_hermitian(SIGMA_1)

    def test_ghost(self):
        assert not is_hermitian(ghost(1, 0.3, 1))
        assert is_hermitian(ghost(1, 0, 1 + 2j))

    def test_random(self, rng):
        for _ in range(20):
            A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            assert is_hermitian(A + A.conj().T)


class TestEigenvalueConstraints:

    @pytest.mark.parametrize("case", list(Case))
    def test_random_cases(self, case, random_hamiltonian):
        for _ in range(50):
            H = random_hamiltonian(case)
            E1, E2 = eigenvalues(H, case)
            assert eigenvalue_constraints(E1, E2, case) <= 1e-9

    def test_violation(self):
        assert eigenvalue_constraints(1 + 1j, 2, Case.CASE1) == pytest.approx(2.0)
