import logging
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from src.core.classifier import Case, classify
from src.core.config import Tolerances
from src.core.errors import (CaseMismatch, DegenerateFrame, ExceptionalPoint,
                             InputError, InvalidPerpVector, NotClassifiable)
from src.core.linalg import (IDENTITY, SIGMA_3, MatOps, as_vector3,
                             bilinear_dot, cross, principal_sqrt,
                             vector_dot_sigma)

logger = logging.getLogger(__name__)

PERMUTATION_FRAME = np.array([[0, 1], [-1, 0]], dtype=complex)


class Sign(Enum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, label):
        """接受 'plus'/'minus'/'+'/'-'/±1"""
        if isinstance(label, Sign):
            return label
        table = {"plus": cls.PLUS, "+": cls.PLUS, "1": cls.PLUS, "+1": cls.PLUS,
                 "minus": cls.MINUS, "-": cls.MINUS, "-1": cls.MINUS}
        key = str(label).strip().lower()
        if key not in table:
            raise InputError(f"无法识别的符号: {label}", field="sign")
        return table[key]

    @property
    def label(self):
        return "plus" if self is Sign.PLUS else "minus"

    def flipped(self):
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


@dataclass(frozen=True)
class Branch:
    """
    分支选择

    属性:
        root: 本征值 E1,2 = tr/2 ± (E1−E2)/2 中的 ± 号
        circle: 度规整体的符号
    """

    root: Sign = Sign.PLUS
    circle: Sign = Sign.PLUS

    @classmethod
    def of(cls, root="plus", circle="plus"):
        return cls(Sign.parse(root), Sign.parse(circle))

    def flipped(self):
        return replace(self, root=self.root.flipped())

    def to_dict(self):
        return {"root": self.root.label, "circle": self.circle.label}


@dataclass(frozen=True)
class EigenSystem:
    """
    H = X⁻¹ diag(E1, E2) X 的谱数据

    属性:
        E1, E2: 本征值
        halfdiff: (E1−E2)/2
        nsigma: n⃗·σ⃗ = (H − tr H/2)/halfdiff
        X, Xinv, Xdag, Xdag_inv: 本征基矩阵
        case: 使用的情形，未指定时为 None
        branch: 实际使用的分支（分母退化时可能与请求的分支相反）
        frame: 'standard'、'diagonal' 或 'permutation'
        scale, u, v: 标准框架下 X = s[[1, u], [−v, 1]]，scale = |s|²
    """

    E1: complex
    E2: complex
    halfdiff: complex
    nsigma: np.ndarray
    X: np.ndarray
    Xinv: np.ndarray
    Xdag: np.ndarray
    Xdag_inv: np.ndarray
    case: Case
    branch: Branch
    frame: str = "standard"
    scale: float = 1.0
    u: complex = 0j
    v: complex = 0j

    @property
    def has_closed_frame(self):
        return self.frame in ("standard", "diagonal")

    def to_dict(self):
        return {
            "E1": self.E1,
            "E2": self.E2,
            "halfdiff": self.halfdiff,
            "nsigma": self.nsigma,
            "X": self.X,
            "Xinv": self.Xinv,
            "Xdag": self.Xdag,
            "Xdag_inv": self.Xdag_inv,
            "case": self.case.value if self.case else None,
            "branch": self.branch.to_dict(),
            "frame": self.frame,
        }


def require_case(H, case, tol=None):
    """
    检查分类结果允许所请求的情形

    Raises:
        ExceptionalPoint: 对应类型处于奇异点
        CaseMismatch: 情形不被允许
    """
    tol = tol or Tolerances()
    try:
        result = classify(H, tol)
    except NotClassifiable as e:
        raise CaseMismatch(f"{case.value} 不被允许: {e.message}", requested=case.value,
                           diagnostics=e.details.get("diagnostics"))
    if result.kind.admits(case.kind) and result.exceptional:
        raise ExceptionalPoint("tr[H]² = 4det[H]，本征值简并",
                               diagnostics=dict(result.diagnostics.to_dict(), det=result.det))
    if case not in result.case_labels:
        raise CaseMismatch(f"{case.value} 不被允许，可用情形: {[c.value for c in result.case_labels]}",
                           requested=case.value,
                           admitted=[c.value for c in result.case_labels])
    return result


def _halfdiff(H, case, branch, tol):
    """
    (E1−E2)/2：case1/4 取实根（实部非负），case2/3 取虚根（虚部非负），再乘以分支符号
    """
    disc = complex((H[0, 0] - H[1, 1]) ** 2 + 4 * H[0, 1] * H[1, 0])
    scale = MatOps.frobenius_norm(H) ** 2
    if abs(disc) <= tol.threshold(scale):
        raise ExceptionalPoint("tr[H]² = 4det[H]，本征值简并", disc=disc)
    root = principal_sqrt(disc)
    if case is not None and case.imaginary_split and root.imag < 0:
        root = -root
    return branch.root.value * root / 2


def eigenvalues(H, case, branch=None, tol=None):
    """
    按情形和分支计算本征值

    Args:
        H: 2×2 复矩阵
        case: Case
        branch: Branch，默认 plus
        tol: Tolerances

    Returns:
        tuple: (E1, E2)，E1 + E2 = tr H

    Raises:
        CaseMismatch, ExceptionalPoint
    """
    tol = tol or Tolerances()
    branch = branch or Branch()
    H = MatOps.as_cmat(H, 2)
    require_case(H, case, tol)
    h = _halfdiff(H, case, branch, tol)
    half_trace = complex(H[0, 0] + H[1, 1]) / 2
    return half_trace + h, half_trace - h


def unit_vector_matrix(H, case, branch=None, tol=None):
    """
    n⃗·σ⃗ = (H − tr H/2·1₂)/((E1−E2)/2)，平方为单位矩阵
    """
    tol = tol or Tolerances()
    branch = branch or Branch()
    H = MatOps.as_cmat(H, 2)
    require_case(H, case, tol)
    h = _halfdiff(H, case, branch, tol)
    half_trace = complex(H[0, 0] + H[1, 1]) / 2
    return (H - half_trace * IDENTITY) / h


def _standard_frame(H, h, delta):
    """
    X = s(1₂ − [[0, −H12], [H21, 0]]/D)，D = h + Δ，s = sqrt(D/(2h))
    """
    D = h + delta
    s = principal_sqrt(D / (2 * h))
    u = complex(H[0, 1] / D)
    v = complex(H[1, 0] / D)
    X = s * np.array([[1, u], [-v, 1]], dtype=complex)
    Xinv = s * np.array([[1, -u], [v, 1]], dtype=complex)
    return X, Xinv, abs(s) ** 2, u, v


def eigenbasis(H, case=None, branch=None, tol=None):
    """
    构造本征基 X、X⁻¹、X⁺、(X⁺)⁻¹

    对角 H 直接使用单位阵或置换框架；分母 D = (E1−E2)/2·(1+n3) 退化时换用相反分支重试。
    case 为 None 时不做分类检查（用于一般可对角化矩阵的时间演化），对角 H 直接使用单位帧。

    Args:
        H: 2×2 复矩阵
        case: Case 或 None
        branch: Branch
        tol: Tolerances

    Returns:
        EigenSystem

    Raises:
        CaseMismatch, ExceptionalPoint, DegenerateFrame
    """
    tol = tol or Tolerances()
    branch = branch or Branch()
    H = MatOps.as_cmat(H, 2)
    if case is not None:
        require_case(H, case, tol)

    half_trace = complex(H[0, 0] + H[1, 1]) / 2
    delta = complex(H[0, 0] - H[1, 1]) / 2
    diagonal_limit = tol.eq_abs * max(1.0, MatOps.frobenius_norm(H))
    is_diagonal = abs(H[0, 1]) <= diagonal_limit and abs(H[1, 0]) <= diagonal_limit

    if case is None and is_diagonal:
        # 对角（含标量）H 的本征基就是单位阵，简并时也成立
        return EigenSystem(
            E1=complex(H[0, 0]),
            E2=complex(H[1, 1]),
            halfdiff=delta,
            nsigma=SIGMA_3.copy(),
            X=IDENTITY.copy(),
            Xinv=IDENTITY.copy(),
            Xdag=IDENTITY.copy(),
            Xdag_inv=IDENTITY.copy(),
            case=None,
            branch=branch,
            frame="diagonal",
            scale=1.0,
            u=0j,
            v=0j,
        )

    used = branch
    h = _halfdiff(H, case, used, tol)
    frame = "standard"
    if is_diagonal:
        if abs(h + delta) > tol.threshold(abs(h)):
            X = IDENTITY.copy()
            Xinv = IDENTITY.copy()
            scale, u, v = 1.0, 0j, 0j
            frame = "diagonal"
        else:
            X = PERMUTATION_FRAME.copy()
            Xinv = SIGMA_3 @ X @ SIGMA_3
            scale, u, v = 1.0, 0j, 0j
            frame = "permutation"
    else:
        if abs(h + delta) <= tol.threshold(abs(h)):
            used = branch.flipped()
            h = _halfdiff(H, case, used, tol)
            logger.warning(f"本征基分母退化，分支由 {branch.root.label} 切换为 {used.root.label}")
            if abs(h + delta) <= tol.threshold(abs(h)):
                raise DegenerateFrame("两个分支的 (E1−E2)/2·(1+n3) 都为零",
                                      halfdiff=h, delta=delta)
        X, Xinv, scale, u, v = _standard_frame(H, h, delta)

    Xdag = X.conj().T
    return EigenSystem(
        E1=half_trace + h,
        E2=half_trace - h,
        halfdiff=h,
        nsigma=(H - half_trace * IDENTITY) / h,
        X=X,
        Xinv=Xinv,
        Xdag=Xdag,
        Xdag_inv=SIGMA_3 @ Xdag @ SIGMA_3,
        case=case,
        branch=used,
        frame=frame,
        scale=scale,
        u=u,
        v=v,
    )


def eigenbasis_from_unit_vector(nsigma):
    """
    由 n⃗·σ⃗ 直接构造 X = sqrt((1+n3)/2)·(1₂ + σ3 n⃗·σ⃗)/(1+n3)
    以及 X⁻¹ = sqrt((1+n3)/2)·(1₂ + n⃗·σ⃗ σ3)/(1+n3)

    Returns:
        tuple: (X, Xinv)
    """
    nsigma = MatOps.as_cmat(nsigma, 2, field="nsigma")
    n3 = complex(nsigma[0, 0])
    if abs(1 + n3) == 0:
        raise DegenerateFrame("1 + n3 = 0", n3=n3)
    prefactor = principal_sqrt((1 + n3) / 2) / (1 + n3)
    X = prefactor * (IDENTITY + SIGMA_3 @ nsigma)
    Xinv = prefactor * (IDENTITY + nsigma @ SIGMA_3)
    return X, Xinv


def perpendicular_vector(n):
    """
    n⃗ ≠ n⃗* 时取 n⃗_⊥ = (n⃗×n⃗*)/sqrt((n⃗×n⃗*)·(n⃗×n⃗*))

    Raises:
        InvalidPerpVector: n⃗ 为实向量（叉积为零）
    """
    n = as_vector3(n, field="n")
    w = cross(n, n.conj())
    q = bilinear_dot(w, w)
    if abs(q) <= 1e-24:
        raise InvalidPerpVector("n⃗ 为实向量，需显式给出 n⃗_⊥")
    return w / principal_sqrt(q)


def generalized_parity(n, sign=Sign.PLUS, n_perp=None, tol=None):
    """
    广义宇称算符 P± = ±n⃗_⊥·σ⃗

    Args:
        n: 单位向量 n⃗（n⃗·n⃗ = 1）
        sign: Sign
        n_perp: 垂直单位向量；None 时按 n⃗×n⃗* 构造
        tol: Tolerances

    Returns:
        numpy.ndarray: P±，满足 P² = 1₂ 且与 n⃗·σ⃗ 反对易

    Raises:
        InvalidPerpVector: 正交归一条件不满足
    """
    tol = tol or Tolerances()
    n = as_vector3(n, field="n")
    n_perp = perpendicular_vector(n) if n_perp is None else as_vector3(n_perp, field="n_perp")
    limit = tol.classify_scale
    if abs(bilinear_dot(n_perp, n_perp) - 1) > limit or abs(bilinear_dot(n, n_perp)) > limit:
        raise InvalidPerpVector("n⃗_⊥ 不满足 n⃗_⊥·n⃗_⊥ = 1 且 n⃗·n⃗_⊥ = 0",
                                n_perp=list(n_perp))
    return Sign.parse(sign).value * vector_dot_sigma(n_perp)


def conjugate_parity(n, sign=Sign.PLUS):
    """
    H⁺ 的广义宇称算符 ±n⃗*_⊥·σ⃗，n⃗*_⊥ = (n⃗*×n⃗)/sqrt((n⃗*×n⃗)·(n⃗*×n⃗))

    与 generalized_parity 使用同一个平方根，因此 n⃗*_⊥ = −n⃗_⊥，P±⁺ = P∓。
    """
    n = as_vector3(n, field="n")
    w = cross(n.conj(), n)
    q = bilinear_dot(w, w)
    if abs(q) <= 1e-24:
        raise InvalidPerpVector("n⃗ 为实向量，需显式给出 n⃗_⊥")
    return Sign.parse(sign).value * vector_dot_sigma(w / principal_sqrt(q))
