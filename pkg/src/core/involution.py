"""
𝒞 = (ηB)ᵀ𝒫⁻¹ 算符与 𝒞² = 1₂ 的对合条件
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.classifier import Case
from src.core.config import Tolerances
from src.core.diagonalizer import Branch, require_case
from src.core.errors import CaseMismatch, InputError
from src.core.linalg import IDENTITY, MatOps

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneralParity:
    """
    最一般的宇称矩阵 𝒫 = [[cos φp, sin φp], [sin φp, −cos φp]]，满足 𝒫 = 𝒫ᵀ = 𝒫⁻¹
    """

    phi_p: float = 0.0

    def __post_init__(self):
        value = float(self.phi_p)
        if not math.isfinite(value):
            raise InputError(f"宇称角必须为有限实数: {self.phi_p}", field="phi_p")
        object.__setattr__(self, "phi_p", value)

    @property
    def matrix(self):
        c, s = math.cos(self.phi_p), math.sin(self.phi_p)
        return np.array([[c, s], [s, -c]], dtype=complex)


@dataclass(frozen=True)
class CResult:
    """
    属性:
        c_matrix: 𝒞
        involution_residual: ‖𝒞² − 1₂‖_F
        b_used: 使用的 B
        commutant_residual: ‖BH ∓ HB‖_F/max(1, ‖H‖_F)，未给出 H 时为 None
        det_product: det(ηB)·det(𝒫)
    """

    c_matrix: np.ndarray
    involution_residual: float
    b_used: np.ndarray
    commutant_residual: float = None
    det_product: complex = 0j

    def to_dict(self):
        return {
            "c_matrix": self.c_matrix,
            "involution_residual": self.involution_residual,
            "b_used": self.b_used,
            "commutant_residual": self.commutant_residual,
            "det_product": self.det_product,
        }


@dataclass(frozen=True)
class InvolutionConstraint:
    n_modulus_ok: bool
    symmetric_ok: bool

    @property
    def satisfiable(self):
        return self.n_modulus_ok and self.symmetric_ok

    def to_dict(self):
        return {
            "n_modulus_ok": self.n_modulus_ok,
            "symmetric_ok": self.symmetric_ok,
            "satisfiable": self.satisfiable,
        }


@dataclass(frozen=True)
class GeyerRelations:
    lhs1: float
    sin_gamma: float
    bound_ok: bool

    def to_dict(self):
        return {"lhs1": self.lhs1, "sin_gamma": self.sin_gamma, "bound_ok": self.bound_ok}


def c_operator(eta, parity=None, B=None, H=None, sign=1, tol=None):
    """
    计算 𝒞 = (ηB)ᵀ𝒫⁻¹ 及其对合残差

    Args:
        eta: 2×2 度规
        parity: GeneralParity，默认 φp = 0
        B: 与 H 对易（伪厄米）或反对易（反伪厄米）的矩阵，默认 1₂
        H: 可选，给出时报告 B 的对易残差
        sign: +1 检查 [B,H] = 0，−1 检查 {B,H} = 0
        tol: Tolerances

    Returns:
        CResult

    Raises:
        SingularMatrix: η 或 𝒫 不可逆
    """
    tol = tol or Tolerances()
    parity = parity or GeneralParity()
    eta = MatOps.as_cmat(eta, 2, field="eta")
    B = IDENTITY.copy() if B is None else MatOps.as_cmat(B, 2, field="B")
    MatOps.inverse(eta, tol)
    P = parity.matrix
    eta_b = eta @ B
    C = eta_b.T @ MatOps.inverse(P, tol)
    residual = float(np.linalg.norm(C @ C - IDENTITY))

    commutant = None
    if H is not None:
        H = MatOps.as_cmat(H, 2)
        commutant = float(np.linalg.norm(B @ H - sign * (H @ B)) / max(1.0, np.linalg.norm(H)))
        if commutant > tol.threshold(1.0):
            logger.warning(f"B 与 H 的(反)对易残差偏大: {commutant:.3e}")

    return CResult(
        c_matrix=C,
        involution_residual=residual,
        b_used=B,
        commutant_residual=commutant,
        det_product=complex(np.linalg.det(eta_b) * np.linalg.det(P)),
    )


def involution_scan(eta, angles, B=None, tol=None):
    """
    在一组宇称角上计算对合残差

    Returns:
        numpy.ndarray: 与 angles 对应的 ‖𝒞² − 1₂‖_F
    """
    return np.array([c_operator(eta, GeneralParity(a), B, tol=tol).involution_residual
                     for a in angles])


def involution_constraint_check(H, N, tol=None):
    """
    𝒞² = 1₂ 要求 |N1|² = |N2|² = 1 且 H12 = H21，只在 case1 下讨论

    Args:
        H: 2×2 复矩阵
        N: Normalization
        tol: Tolerances

    Returns:
        InvolutionConstraint

    Raises:
        CaseMismatch: H 不允许 case1
    """
    tol = tol or Tolerances()
    H = MatOps.as_cmat(H, 2)
    require_case(H, Case.CASE1, tol)
    limit = tol.threshold(1.0)
    n_ok = abs(abs(N.N1) ** 2 - 1) <= limit and abs(abs(N.N2) ** 2 - 1) <= limit
    symmetric_ok = abs(H[0, 1] - H[1, 0]) <= tol.threshold(MatOps.frobenius_norm(H))
    result = InvolutionConstraint(n_modulus_ok=bool(n_ok), symmetric_ok=bool(symmetric_ok))
    logger.debug(f"对合条件: {result.to_dict()}")
    return result


def geyer_relations(r, theta, s, N, branch=None):
    """
    对称 Bender 哈密顿量 (t = s, φ = 0) 上的两个关系

        (|N1|²+|N2|²)/(2√(1−(r/s·sinθ)²))
        sin γ = ±(|N1|²−|N2|²)/2
        (sin γ)² + (r/s·sinθ)² < 1

    Raises:
        CaseMismatch: s² ≤ (r sinθ)²，不在 case1 区域
    """
    branch = branch or Branch()
    rho = r * math.sin(theta)
    if s * s <= rho * rho:
        raise CaseMismatch("需要 s² > (r sinθ)²", requested=Case.CASE1.value, r=r, theta=theta, s=s)
    ratio = rho / s
    a1, a2 = abs(N.N1) ** 2, abs(N.N2) ** 2
    sin_gamma = branch.root.value * (a1 - a2) / 2
    return GeyerRelations(
        lhs1=(a1 + a2) / (2 * math.sqrt(1 - ratio ** 2)),
        sin_gamma=sin_gamma,
        bound_ok=sin_gamma ** 2 + ratio ** 2 < 1,
    )
