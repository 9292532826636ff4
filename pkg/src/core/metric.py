"""
度规算符 η 的构造、闭式逆与定义关系校验

平凡相 (Q = 1₂) 使用 η₀ + η₃，非平凡相 (Q = P) 使用 η₁ + η₂；
两者都通过本征基 X 的 X⁺σₖX 展开计算，并与直接乘积 (NX)⁺Q(NX) 交叉校验。
"""

import cmath
import logging
from dataclasses import dataclass

import numpy as np

from src.core.classifier import Case, HermiticityKind, PhaseKind, classify
from src.core.config import Tolerances
from src.core.diagonalizer import Branch, eigenbasis
from src.core.errors import (CaseMismatch, DegenerateNormalizationRatio, ExceptionalPoint,
                             InputError, InvalidNormalization, VerificationFailed)
from src.core.linalg import IDENTITY, PAULI, SIGMA_1, SIGMA_2, SIGMA_3, MatOps

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Normalization:
    """
    右本征向量的归一化自由度 N = diag(N1, N2)

    属性:
        N1, N2: 非零有限复数
    """

    N1: complex = 1 + 0j
    N2: complex = 1 + 0j

    def __post_init__(self):
        for name in ("N1", "N2"):
            value = complex(getattr(self, name))
            if not cmath.isfinite(value) or abs(value) == 0:
                raise InvalidNormalization(f"{name} 必须为非零有限复数: {value}", field=name)
            object.__setattr__(self, name, value)

    @property
    def matrix(self):
        return np.diag([self.N1, self.N2]).astype(complex)

    @property
    def modulus_product_squared(self):
        """|N1 N2|²"""
        return abs(self.N1 * self.N2) ** 2

    def trivial_weights(self):
        """
        Returns:
            tuple: ((|N1|²+|N2|²)/2, (|N1|²−|N2|²)/2)
        """
        a1, a2 = abs(self.N1) ** 2, abs(self.N2) ** 2
        return (a1 + a2) / 2, (a1 - a2) / 2

    def nontrivial_weights(self):
        """
        N⁺PN = c1·e⃗·σ⃗ + c2·e⃗_⊥·σ⃗ 的系数

        Returns:
            tuple: (Re(N1*N2), Im(N1*N2))
        """
        w = self.N1.conjugate() * self.N2
        return w.real, w.imag

    def to_dict(self):
        return {"N1": self.N1, "N2": self.N2}


@dataclass(frozen=True)
class PhaseVector:
    """
    e⃗ = (cos φ, sin φ, 0)，e⃗_⊥ = (sin φ, −cos φ, 0)；φ 可以是复数
    """

    phi: complex = 0j

    def __post_init__(self):
        value = complex(self.phi)
        if not cmath.isfinite(value):
            raise InputError(f"φ 必须为有限复数: {value}", field="phi")
        object.__setattr__(self, "phi", value)

    @property
    def e(self):
        return np.array([cmath.cos(self.phi), cmath.sin(self.phi), 0], dtype=complex)

    @property
    def e_perp(self):
        return np.array([cmath.sin(self.phi), -cmath.cos(self.phi), 0], dtype=complex)

    @property
    def is_real(self):
        return self.phi.imag == 0

    def parity(self):
        """P = e⃗·σ⃗ = [[0, e^{−iφ}], [e^{iφ}, 0]]"""
        return cmath.cos(self.phi) * SIGMA_1 + cmath.sin(self.phi) * SIGMA_2

    def orthogonal_parity(self):
        """P_⊥ = e⃗_⊥·σ⃗ = iσ₃P"""
        return cmath.sin(self.phi) * SIGMA_1 - cmath.cos(self.phi) * SIGMA_2

    def to_dict(self):
        return {"phi": self.phi}


@dataclass(frozen=True)
class MetricResult:
    """
    度规构造结果

    属性:
        eta: η = part_a + part_b
        part_a: η₀（平凡相）或 η₁（非平凡相）
        part_b: η₃ 或 η₂
        phase_vector: 非平凡相使用的 PhaseVector，平凡相为 None
        case: 使用的情形
        branch: 实际使用的分支
        residual: ‖H⁺ ∓ ηHη⁻¹‖_F / max(1, ‖H‖_F)
        hermitian: η 是否厄米
        assembly_deviation: 与直接乘积 (NX)⁺Q(NX) 的最大逐元素偏差
    """

    eta: np.ndarray
    part_a: np.ndarray
    part_b: np.ndarray
    phase_vector: PhaseVector
    case: Case
    branch: Branch
    residual: float
    hermitian: bool
    assembly_deviation: float = 0.0

    @property
    def q_used(self):
        return "identity" if self.phase_vector is None else "parity"

    @property
    def sign(self):
        return self.case.sign

    def to_dict(self):
        return {
            "eta": self.eta,
            "part_a": self.part_a,
            "part_b": self.part_b,
            "q_used": self.q_used,
            "phi": None if self.phase_vector is None else self.phase_vector.phi,
            "sign": "pseudo" if self.sign > 0 else "anti",
            "case": self.case.value,
            "branch": self.branch.to_dict(),
            "residual": self.residual,
            "hermitian": self.hermitian,
            "assembly_deviation": self.assembly_deviation,
        }


def sandwich_products(es):
    """
    X⁺σₖX，k = 0..3（σ₀ = 1₂）

    标准框架下 X = s[[1, u], [−v, 1]]，结果只依赖 |s|²、u、v；置换框架直接做矩阵乘法。

    Args:
        es: EigenSystem

    Returns:
        tuple: (S0, S1, S2, S3)
    """
    if not es.has_closed_frame:
        return tuple(es.Xdag @ sigma @ es.X for sigma in (IDENTITY,) + PAULI)

    k, u, v = es.scale, es.u, es.v
    uc, vc = u.conjugate(), v.conjugate()
    S0 = k * np.array([[1 + abs(v) ** 2, u - vc], [uc - v, 1 + abs(u) ** 2]], dtype=complex)
    S1 = k * np.array([[-2 * v.real, 1 - u * vc], [1 - uc * v, 2 * u.real]], dtype=complex)
    S2 = k * np.array([[-2 * v.imag, -1j * (1 + u * vc)], [1j * (1 + uc * v), -2 * u.imag]],
                      dtype=complex)
    S3 = k * np.array([[1 - abs(v) ** 2, u + vc], [uc + v, abs(u) ** 2 - 1]], dtype=complex)
    return S0, S1, S2, S3


def outer_products(es):
    """XσₖX⁺，k = 0..3，用于逆度规"""
    return tuple(es.X @ sigma @ es.Xdag for sigma in (IDENTITY,) + PAULI)


def verify_pseudo_hermiticity(H, eta, sign=1, tol=None):
    """
    定义关系残差

    Args:
        H: 2×2 或 4×4 矩阵
        eta: 度规
        sign: +1（伪厄米）或 −1（反伪厄米）
        tol: Tolerances

    Returns:
        float: ‖H⁺ ∓ ηHη⁻¹‖_F / max(1, ‖H‖_F)

    Raises:
        SingularMatrix: η 不可逆
    """
    H = MatOps.as_cmat(H)
    eta = MatOps.as_cmat(eta, H.shape[0], field="eta")
    eta_inv = MatOps.inverse(eta, tol)
    diff = H.conj().T - sign * (eta @ H @ eta_inv)
    return float(np.linalg.norm(diff) / max(1.0, np.linalg.norm(H)))


def _prepare(H, case, allowed, branch, tol):
    if case not in allowed:
        raise CaseMismatch(f"{case.value} 不属于该相", requested=case.value,
                           admitted=[c.value for c in allowed])
    return eigenbasis(H, case, branch, tol)


def _finish(H, es, part_a, part_b, phase_vector, N, tol):
    eta = part_a + part_b
    Q = IDENTITY if phase_vector is None else phase_vector.parity()
    NX = N.matrix @ es.X
    direct = es.branch.circle.value * (NX.conj().T @ Q @ NX)
    deviation = float(np.max(np.abs(direct - eta)))
    residual = verify_pseudo_hermiticity(H, eta, es.case.sign, tol)
    result = MetricResult(
        eta=eta,
        part_a=part_a,
        part_b=part_b,
        phase_vector=phase_vector,
        case=es.case,
        branch=es.branch,
        residual=residual,
        hermitian=MatOps.is_hermitian(eta, tol),
        assembly_deviation=deviation,
    )
    logger.debug(f"{es.case.value} 度规残差 {residual:.3e}，组装偏差 {deviation:.3e}")
    return result


def metric_trivial(H, N=None, case=Case.CASE1, branch=None, tol=None):
    """
    平凡相度规 η = ⊕(η₀ + η₃)

    η₀ = ((|N1|²+|N2|²)/2)·X⁺X，η₃ = ((|N1|²−|N2|²)/2)·X⁺σ₃X

    Args:
        H: 2×2 复矩阵
        N: Normalization
        case: Case.CASE1 或 Case.CASE3
        branch: Branch
        tol: Tolerances

    Returns:
        MetricResult

    Raises:
        CaseMismatch, ExceptionalPoint, DegenerateFrame
    """
    tol = tol or Tolerances()
    N = N or Normalization()
    H = MatOps.as_cmat(H, 2)
    es = _prepare(H, case, (Case.CASE1, Case.CASE3), branch, tol)
    S0, _, _, S3 = sandwich_products(es)
    A, B = N.trivial_weights()
    c = es.branch.circle.value
    return _finish(H, es, c * A * S0, c * B * S3, None, N, tol)


def metric_nontrivial(H, N=None, pv=None, case=Case.CASE2, branch=None, tol=None):
    """
    非平凡相度规 η = ⊕(η₁ + η₂)

    η₁ = c1·X⁺(e⃗·σ⃗)X，η₂ = c2·X⁺(e⃗_⊥·σ⃗)X，其中 N1*N2 = c1 + i·c2。
    只有 φ 为实数时 η 才是厄米的。

    Returns:
        MetricResult
    """
    tol = tol or Tolerances()
    N = N or Normalization()
    pv = pv or PhaseVector()
    H = MatOps.as_cmat(H, 2)
    es = _prepare(H, case, (Case.CASE2, Case.CASE4), branch, tol)
    _, S1, S2, _ = sandwich_products(es)
    c1, c2 = N.nontrivial_weights()
    cos_phi, sin_phi = cmath.cos(pv.phi), cmath.sin(pv.phi)
    c = es.branch.circle.value
    part_a = c * c1 * (cos_phi * S1 + sin_phi * S2)
    part_b = c * c2 * (sin_phi * S1 - cos_phi * S2)
    return _finish(H, es, part_a, part_b, pv, N, tol)


def select_case(H, kind=None, q=None, tol=None):
    """
    根据分类结果、指定的厄米性类型和 Q 选择情形

    H 同时属于两类且未指定 kind 时，取相与 q 一致的那一类。

    Args:
        H: 2×2 复矩阵
        kind: HermiticityKind.PSEUDO/ANTI 或 None（自动）
        q: 'identity'、'parity' 或 None（由相决定）
        tol: Tolerances

    Returns:
        Case

    Raises:
        CaseMismatch: 需要显式指定类型，或 kind/Q 与分类结果矛盾
        ExceptionalPoint: 该类型处于奇异点
    """
    result = classify(H, tol)
    wanted = None if q is None else (PhaseKind.TRIVIAL if q == "identity" else PhaseKind.NONTRIVIAL)
    if kind is None:
        if result.kind is HermiticityKind.BOTH:
            kind = _kind_for_phase(result, wanted)
        else:
            kind = result.kind
    if not result.kind.admits(kind):
        raise CaseMismatch(f"H 不是 {kind.value} 类型", kind=result.kind.value)

    phase = result.phase_for(kind)
    if phase is PhaseKind.EXCEPTIONAL:
        raise ExceptionalPoint("tr[H]² = 4det[H]，不构造度规",
                               diagnostics=dict(result.diagnostics.to_dict(), det=result.det))
    case = Case.of(kind, phase)
    if wanted is not None and wanted is not phase:
        raise CaseMismatch(f"Q={q} 与 {case.value} 的相不一致", requested=q,
                           admitted=[case.value])
    return case


def _kind_for_phase(result, wanted):
    """
    H 同时属于两类时，由 Q 要求的相确定类型；Q 未给出时无法确定
    """
    admitted = [c.value for c in result.case_labels]
    if wanted is None:
        raise CaseMismatch("kind required: H 同时是伪厄米和反伪厄米的", admitted=admitted)
    kinds = [k for k in (HermiticityKind.PSEUDO, HermiticityKind.ANTI)
             if result.phase_for(k) is wanted]
    if len(kinds) == 1:
        logger.info(f"按 Q 的相选择类型 {kinds[0].value}")
        return kinds[0]
    if not kinds and result.exceptional:
        raise ExceptionalPoint("tr[H]² = 4det[H]，不构造度规",
                               diagnostics=dict(result.diagnostics.to_dict(), det=result.det))
    raise CaseMismatch("kind required: Q 不能唯一确定类型", requested=wanted.value,
                       admitted=admitted)


def metric_general(H, N=None, q=None, kind=None, branch=None, tol=None):
    """
    η = ⊕(NX)⁺Q(NX)，按相分派到 metric_trivial 或 metric_nontrivial

    Args:
        H: 2×2 复矩阵
        N: Normalization
        q: None、'identity' 或 PhaseVector（表示 Q = P(φ)）
        kind: HermiticityKind 或 None
        branch: Branch
        tol: Tolerances

    Returns:
        MetricResult: assembly_deviation 记录与直接乘积的偏差

    Raises:
        CaseMismatch, ExceptionalPoint, DegenerateFrame
        VerificationFailed: 展开式与直接乘积的偏差超过容差的 100 倍
    """
    tol = tol or Tolerances()
    label = None if q is None else ("identity" if q == "identity" else "parity")
    case = select_case(H, kind, label, tol)
    if case.phase is PhaseKind.TRIVIAL:
        result = metric_trivial(H, N, case, branch, tol)
    else:
        pv = q if isinstance(q, PhaseVector) else PhaseVector()
        result = metric_nontrivial(H, N, pv, case, branch, tol)
    limit = tol.eq_abs + tol.eq_rel * float(np.linalg.norm(result.eta))
    if result.assembly_deviation > limit * 100:
        logger.error(f"度规展开与直接乘积不一致: {result.assembly_deviation:.3e}")
        raise VerificationFailed("度规展开与直接乘积 (NX)⁺Q(NX) 不一致",
                                 assembly_deviation=result.assembly_deviation,
                                 limit=limit * 100, case=result.case.value)
    return result


def inverse_metric_trivial(H, N=None, case=Case.CASE1, branch=None, tol=None):
    """
    η⁻¹ = ⊕(1/|N1N2|²)·σ₃(A·XX⁺ − B·Xσ₃X⁺)σ₃
    其中 A = (|N1|²+|N2|²)/2，B = (|N1|²−|N2|²)/2
    """
    tol = tol or Tolerances()
    N = N or Normalization()
    H = MatOps.as_cmat(H, 2)
    es = _prepare(H, case, (Case.CASE1, Case.CASE3), branch, tol)
    T0, _, _, T3 = outer_products(es)
    A, B = N.trivial_weights()
    c = es.branch.circle.value
    return c / N.modulus_product_squared * (SIGMA_3 @ (A * T0 - B * T3) @ SIGMA_3)


def inverse_metric_nontrivial(H, N=None, pv=None, case=Case.CASE2, branch=None, tol=None):
    """
    非平凡相逆度规

    φ 为实数时 η⁻¹ = −⊕(1/|N1N2|²)·σ₃(η̃₁⁺ + η̃₂⁺)σ₃；
    φ 为复数时使用 cosh(2Im φ)、sinh(2Im φ) 形式，需要 c1、c2 都不为零。
    这里 η̃ⱼ 是把 X⁺σₖX 换成 XσₖX⁺ 后的 ηⱼ。

    Raises:
        DegenerateNormalizationRatio: Im φ ≠ 0 且 c1 或 c2 为零
    """
    tol = tol or Tolerances()
    N = N or Normalization()
    pv = pv or PhaseVector()
    H = MatOps.as_cmat(H, 2)
    es = _prepare(H, case, (Case.CASE2, Case.CASE4), branch, tol)
    _, T1, T2, _ = outer_products(es)
    c1, c2 = N.nontrivial_weights()
    prefactor = -es.branch.circle.value / N.modulus_product_squared

    cos_phi, sin_phi = cmath.cos(pv.phi), cmath.sin(pv.phi)
    direct = c1 * (cos_phi * T1 + sin_phi * T2) + c2 * (sin_phi * T1 - cos_phi * T2)
    direct = prefactor * (SIGMA_3 @ direct @ SIGMA_3)

    phi_c = pv.phi.conjugate()
    tilde_1 = c1 * (cmath.cos(phi_c) * T1 + cmath.sin(phi_c) * T2)
    tilde_2 = c2 * (cmath.sin(phi_c) * T1 - cmath.cos(phi_c) * T2)
    if pv.is_real:
        closed = prefactor * (SIGMA_3 @ (tilde_1 + tilde_2) @ SIGMA_3)
    else:
        scale = max(1.0, abs(c1), abs(c2))
        if abs(c1) <= tol.eq_abs * scale or abs(c2) <= tol.eq_abs * scale:
            raise DegenerateNormalizationRatio(
                "Im φ ≠ 0 时需要 N1*N2 的实部和虚部都不为零", c1=c1, c2=c2)
        two_b = 2 * pv.phi.imag
        inner = (np.cosh(two_b) * (tilde_1 + tilde_2)
                 + 1j * np.sinh(two_b) * ((c2 / c1) * tilde_1 - (c1 / c2) * tilde_2))
        closed = prefactor * (SIGMA_3 @ inner @ SIGMA_3)

    if not MatOps.allclose(closed, direct, Tolerances(tol.eq_abs * 10, tol.eq_rel * 10)):
        logger.warning(f"逆度规闭式与展开式偏差 {np.max(np.abs(closed - direct)):.3e}")
    return closed


def inverse_metric(H, N=None, q=None, kind=None, branch=None, tol=None):
    """按相分派的闭式逆度规"""
    tol = tol or Tolerances()
    label = None if q is None else ("identity" if q == "identity" else "parity")
    case = select_case(H, kind, label, tol)
    if case.phase is PhaseKind.TRIVIAL:
        return inverse_metric_trivial(H, N, case, branch, tol)
    pv = q if isinstance(q, PhaseVector) else PhaseVector()
    return inverse_metric_nontrivial(H, N, pv, case, branch, tol)


def metric_determinant(N=None, q=None):
    """
    det η = |N1N2|²·det Q：Q = 1₂ 时为正，Q = P 时为负（det X = 1）
    """
    N = N or Normalization()
    det_q = 1.0 if q is None or q == "identity" else -1.0
    return N.modulus_product_squared * det_q
