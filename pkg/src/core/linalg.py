"""
复数 2×2 / 4×4 矩阵运算与泡利基分解

矩阵一律使用 numpy complex128 数组表示，所有函数都是纯函数，不修改输入。
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.core.config import Tolerances
from src.core.errors import InputError, SingularMatrix

logger = logging.getLogger(__name__)

IDENTITY = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)


def principal_sqrt(z):
    """
    复数主值平方根：实部非负；实部为零时虚部非负

    Args:
        z: 复数

    Returns:
        complex: 主值平方根
    """
    root = complex(np.sqrt(complex(z)))
    if root.real == 0.0 and root.imag < 0.0:
        root = -root
    return root


def as_vector3(u, field="vector"):
    """把长度为3的序列转换为复数数组"""
    arr = np.asarray(u, dtype=complex)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise InputError(f"{field} 必须是3个有限复数", field=field)
    return arr


def bilinear_dot(u, v):
    """双线性（不取共轭）内积 u·v"""
    return complex(np.dot(as_vector3(u), as_vector3(v)))


def cross(u, v):
    """三维复向量叉积"""
    return np.cross(as_vector3(u), as_vector3(v))


@dataclass(frozen=True)
class PauliDecomposition:
    """
    M = a0·1₂ + a⃗·σ⃗ 的系数

    属性:
        a0: 单位矩阵系数
        a: (a1, a2, a3) 泡利矩阵系数
    """

    a0: complex
    a: tuple

    @property
    def norm_squared(self):
        """a⃗·a⃗（双线性）"""
        return bilinear_dot(self.a, self.a)

    @property
    def n(self):
        """
        单位向量 n⃗ = a⃗/sqrt(a⃗·a⃗)，满足 n⃗·n⃗ = 1；a⃗·a⃗ = 0 时无定义，返回 None
        """
        q = self.norm_squared
        if q == 0:
            return None
        root = principal_sqrt(q)
        return tuple(complex(x / root) for x in self.a)

    @property
    def n3(self):
        n = self.n
        return None if n is None else n[2]

    def conjugate(self):
        """H⁺ 的分解：系数取复共轭"""
        return PauliDecomposition(complex(np.conj(self.a0)),
                                  tuple(complex(np.conj(x)) for x in self.a))

    def to_dict(self):
        n = self.n
        return {
            "a0": self.a0,
            "a": list(self.a),
            "n": None if n is None else list(n),
        }


def pauli_decompose(M):
    """
    把2×2矩阵分解到泡利基上

    Args:
        M: 2×2 复矩阵

    Returns:
        PauliDecomposition: a0 = tr(M)/2，a1 = (M12+M21)/2，a2 = i(M12−M21)/2，a3 = (M11−M22)/2
    """
    M = MatOps.as_cmat(M, 2)
    a0 = (M[0, 0] + M[1, 1]) / 2
    a1 = (M[0, 1] + M[1, 0]) / 2
    a2 = 1j * (M[0, 1] - M[1, 0]) / 2
    a3 = (M[0, 0] - M[1, 1]) / 2
    return PauliDecomposition(complex(a0), (complex(a1), complex(a2), complex(a3)))


def pauli_compose(d):
    """a0·1₂ + a⃗·σ⃗"""
    result = d.a0 * IDENTITY
    for coeff, sigma in zip(d.a, PAULI):
        result = result + coeff * sigma
    return result


def vector_dot_sigma(u):
    """u⃗·σ⃗"""
    return pauli_compose(PauliDecomposition(0j, tuple(as_vector3(u))))


def pauli_double_product(u, v):
    """
    (u⃗·σ⃗)(v⃗·σ⃗) = u⃗·v⃗ 1₂ + i σ⃗·(u⃗×v⃗)

    Returns:
        tuple: (标量部分, 向量部分)
    """
    return bilinear_dot(u, v), 1j * cross(u, v)


def pauli_triple_product(u, e, v):
    """
    (u⃗·σ⃗)(e⃗·σ⃗)(v⃗·σ⃗) 的泡利分解

    向量部分 (u⃗·e⃗)v⃗ + (v⃗·e⃗)u⃗ − (u⃗·v⃗)e⃗，标量部分 −i e⃗·(u⃗×v⃗)

    Returns:
        tuple: (标量部分, 向量部分)
    """
    u, e, v = as_vector3(u), as_vector3(e), as_vector3(v)
    vector = np.dot(u, e) * v + np.dot(v, e) * u - np.dot(u, v) * e
    scalar = -1j * np.dot(e, np.cross(u, v))
    return complex(scalar), vector


class MatOps:
    """
    矩阵工具类

    为 2×2 与 4×4 复矩阵提供带校验的基本运算。所有方法均为静态方法。
    """

    @staticmethod
    def as_cmat(M, dim=None, field="matrix"):
        """
        校验并转换为复矩阵

        Args:
            M: 任意可转换为数组的对象
            dim: 期望的维数（2 或 4），None 表示 2 或 4 均可
            field: 出错时报告的字段名

        Returns:
            numpy.ndarray: complex128 方阵
        """
        try:
            arr = np.asarray(M, dtype=complex)
        except (TypeError, ValueError) as e:
            raise InputError(f"{field} 无法转换为复矩阵: {e}", field=field)
        allowed = (dim,) if dim else (2, 4)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in allowed:
            raise InputError(f"{field} 形状错误: {arr.shape}", field=field)
        if not np.all(np.isfinite(arr)):
            raise InputError(f"{field} 含有非有限元素", field=field)
        return arr

    @staticmethod
    def add(A, B):
        return MatOps.as_cmat(A) + MatOps.as_cmat(B)

    @staticmethod
    def sub(A, B):
        return MatOps.as_cmat(A) - MatOps.as_cmat(B)

    @staticmethod
    def mul(*matrices):
        """按顺序连乘"""
        result = MatOps.as_cmat(matrices[0])
        for M in matrices[1:]:
            result = result @ MatOps.as_cmat(M)
        return result

    @staticmethod
    def scalar_mul(c, A):
        return complex(c) * MatOps.as_cmat(A)

    @staticmethod
    def dagger(A):
        return MatOps.as_cmat(A).conj().T

    @staticmethod
    def transpose(A):
        return MatOps.as_cmat(A).T.copy()

    @staticmethod
    def det(A):
        return complex(np.linalg.det(MatOps.as_cmat(A)))

    @staticmethod
    def trace(A):
        return complex(np.trace(MatOps.as_cmat(A)))

    @staticmethod
    def frobenius_norm(A):
        return float(np.linalg.norm(MatOps.as_cmat(A)))

    @staticmethod
    def inverse(A, tol=None):
        """
        求逆

        Raises:
            SingularMatrix: |det| ≤ eq_abs·max(1, ‖A‖²)
        """
        tol = tol or Tolerances()
        A = MatOps.as_cmat(A)
        det = np.linalg.det(A)
        limit = tol.eq_abs * max(1.0, MatOps.frobenius_norm(A) ** 2)
        if abs(det) <= limit:
            raise SingularMatrix(f"矩阵奇异: |det| = {abs(det):.3e} ≤ {limit:.3e}",
                                 det=[det.real, det.imag])
        return np.linalg.inv(A)

    @staticmethod
    def kron(A, B):
        """2×2 ⊗ 2×2 → 4×4"""
        return np.kron(MatOps.as_cmat(A, 2), MatOps.as_cmat(B, 2))

    @staticmethod
    def commutator(A, B):
        return A @ B - B @ A

    @staticmethod
    def anticommutator(A, B):
        return A @ B + B @ A

    @staticmethod
    def allclose(A, B, tol=None):
        """
        逐元素比较：|A−B| ≤ eq_abs + eq_rel·max(‖A‖, ‖B‖)
        """
        tol = tol or Tolerances()
        A, B = np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
        scale = max(np.linalg.norm(A), np.linalg.norm(B))
        return bool(np.all(np.abs(A - B) <= tol.eq_abs + tol.eq_rel * scale))

    @staticmethod
    def is_hermitian(A, tol=None):
        A = MatOps.as_cmat(A)
        return MatOps.allclose(A, A.conj().T, tol)
