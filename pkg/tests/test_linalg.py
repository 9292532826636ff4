import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.config import Tolerances
from src.core.errors import InputError, SingularMatrix
from src.core.linalg import (IDENTITY, SIGMA_1, SIGMA_2, SIGMA_3, MatOps,
                             PauliDecomposition, pauli_compose, pauli_decompose,
                             pauli_double_product, pauli_triple_product,
                             principal_sqrt, vector_dot_sigma)


class TestPauliDecomposition:

    def test_sigma3(self):
        d = pauli_decompose(SIGMA_3)
        assert d.a0 == 0
        assert_allclose(d.a, (0, 0, 1))

    def test_complex_ghost(self):
        m, eps, gamma = 0.7, 0.4, 1.2 - 0.3j
        H = np.array([[m - 1j * eps, np.conj(gamma)], [gamma, m + 1j * eps]])
        d = pauli_decompose(H)
        assert_allclose(d.a0, m)
        assert_allclose(d.a, (gamma.real, gamma.imag, -1j * eps), atol=1e-15)

    def test_round_trip(self, rng):
        for _ in range(10_000):
            M = rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))
            assert_allclose(pauli_compose(pauli_decompose(M)), M, atol=1e-14)

    def test_compose_basis(self):
        assert_allclose(pauli_compose(PauliDecomposition(1, (0, 0, 0))), IDENTITY)
        assert_allclose(pauli_compose(PauliDecomposition(0, (1, 0, 0))), SIGMA_1)

    def test_unit_vector(self):
        d = pauli_decompose(np.array([[0.5, 2.0], [0.5, -0.5]]))
        n = np.array(d.n)
        assert_allclose(np.dot(n, n), 1.0, atol=1e-14)
        assert pauli_decompose(np.zeros((2, 2))).n is None

    def test_conjugate_matches_dagger(self, rng):
        M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        d = pauli_decompose(M).conjugate()
        assert_allclose(pauli_compose(d), M.conj().T, atol=1e-14)


class TestPauliProducts:

    def test_sigma3_cubed(self):
        scalar, vector = pauli_triple_product((0, 0, 1), (0, 0, 1), (0, 0, 1))
        assert scalar == 0
        assert_allclose(vector, (0, 0, 1))

    def test_sigma1_sigma2(self):
        scalar, vector = pauli_double_product((1, 0, 0), (0, 1, 0))
        assert scalar == 0
        assert_allclose(vector, (0, 0, 1j))
        assert_allclose(SIGMA_1 @ SIGMA_2, 1j * SIGMA_3)

    def test_triple_product_matches_matrices(self, rng):
        for _ in range(50):
            u, e, v = rng.uniform(-1, 1, (3, 3))
            expected = vector_dot_sigma(u) @ vector_dot_sigma(e) @ vector_dot_sigma(v)
            scalar, vector = pauli_triple_product(u, e, v)
            assert_allclose(scalar * IDENTITY + vector_dot_sigma(vector), expected, atol=1e-13)

    def test_double_product_matches_matrices(self, rng):
        u = rng.normal(size=3) + 1j * rng.normal(size=3)
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        scalar, vector = pauli_double_product(u, v)
        assert_allclose(scalar * IDENTITY + vector_dot_sigma(vector),
                        vector_dot_sigma(u) @ vector_dot_sigma(v), atol=1e-13)


class TestMatOps:

    def test_inverse_identity(self):
        assert_allclose(MatOps.inverse(IDENTITY), IDENTITY)

    def test_det(self):
        assert_allclose(MatOps.det([[1, 2], [3, 4]]), -2)

    def test_kron(self):
        assert_allclose(MatOps.kron(SIGMA_3, IDENTITY), np.diag([1, 1, -1, -1]))

    def test_kron_mixed_product(self, rng):
        for _ in range(20):
            A, B, C, D = rng.normal(size=(4, 2, 2)) + 1j * rng.normal(size=(4, 2, 2))
            assert_allclose(MatOps.kron(A, B) @ MatOps.kron(C, D), MatOps.kron(A @ C, B @ D),
                            atol=1e-12)

    def test_inverse_both_sides(self, rng):
        for _ in range(200):
            M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            if np.linalg.cond(M) > 1e3:
                continue
            M_inv = MatOps.inverse(M)
            assert_allclose(M_inv @ M, IDENTITY, atol=1e-10)
            assert_allclose(M @ M_inv, IDENTITY, atol=1e-10)

    def test_elementwise_operations(self, rng):
        A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        B = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert_allclose(MatOps.add(A, B), A + B)
        assert_allclose(MatOps.sub(A, B), A - B)
        assert_allclose(MatOps.sub(MatOps.add(A, B), B), A, atol=1e-15)
        assert_allclose(MatOps.scalar_mul(2 - 1j, A), (2 - 1j) * A)
        assert_allclose(MatOps.transpose(A), A.T)
        assert_allclose(MatOps.transpose(MatOps.transpose(A)), A)
        assert MatOps.trace(A) == pytest.approx(A[0, 0] + A[1, 1])
        assert MatOps.trace(MatOps.add(A, B)) == pytest.approx(MatOps.trace(A) + MatOps.trace(B))

    def test_transpose_is_a_copy(self):
        A = np.array([[1, 2], [3, 4]], dtype=complex)
        MatOps.transpose(A)[0, 1] = 9
        assert A[1, 0] == 3

    def test_four_by_four_operations(self):
        K = MatOps.kron(SIGMA_1, SIGMA_3)
        assert MatOps.trace(K) == 0
        assert_allclose(MatOps.inverse(K), K)
        assert_allclose(MatOps.scalar_mul(0.5, MatOps.add(K, K)), K)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            MatOps.inverse([[1, 2], [2, 4]])

    def test_singular_respects_tolerance(self):
        near = np.array([[1, 0], [0, 1e-8]])
        MatOps.inverse(near)
        with pytest.raises(SingularMatrix):
            MatOps.inverse(near, Tolerances(eq_abs=1e-6))

    def test_mul_order(self):
        assert_allclose(MatOps.mul(SIGMA_1, SIGMA_2, SIGMA_3), 1j * IDENTITY)

    def test_brackets(self):
        assert_allclose(MatOps.commutator(SIGMA_1, SIGMA_2), 2j * SIGMA_3)
        assert_allclose(MatOps.anticommutator(SIGMA_1, SIGMA_1), 2 * IDENTITY)

    @pytest.mark.parametrize("bad", [
        [[1, 2, 3], [4, 5, 6]],
        [[1, np.nan], [0, 1]],
        [[1, np.inf], [0, 1]],
        [1, 2],
        "not a matrix",
    ])
    def test_as_cmat_rejects(self, bad):
        with pytest.raises(InputError):
            MatOps.as_cmat(bad, 2)

    def test_hermitian(self, rng):
        A = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert MatOps.is_hermitian(A + A.conj().T)
        assert not MatOps.is_hermitian(A - A.conj().T)


class TestPrincipalSqrt:

    @pytest.mark.parametrize("z, expected", [
        (4, 2),
        (-4, 2j),
        (2j, 1 + 1j),
        (-2j, 1 - 1j),
    ])
    def test_values(self, z, expected):
        assert_allclose(principal_sqrt(z), expected, atol=1e-15)

    def test_negative_real_with_signed_zero(self):
        assert principal_sqrt(complex(-9, -0.0)).imag > 0
