import logging
from dataclasses import dataclass, field
from enum import Enum

from src.core.config import Tolerances
from src.core.errors import NotClassifiable
from src.core.linalg import MatOps


class HermiticityKind(Enum):
    PSEUDO = "pseudo"
    ANTI = "anti"
    BOTH = "both"
    NEITHER = "neither"

    def admits(self, kind):
        """是否允许某个单一类型（PSEUDO 或 ANTI）"""
        return self is kind or self is HermiticityKind.BOTH


class PhaseKind(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    EXCEPTIONAL = "exceptional"


class Case(Enum):
    """
    四种情形：
        case1 - 伪厄米，tr² > 4det，平凡相
        case2 - 伪厄米，tr² < 4det，非平凡相
        case3 - 反伪厄米，tr² < 4det，平凡相
        case4 - 反伪厄米，tr² > 4det，非平凡相
    """

    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CASE4 = "case4"

    @property
    def kind(self):
        if self in (Case.CASE1, Case.CASE2):
            return HermiticityKind.PSEUDO
        return HermiticityKind.ANTI

    @property
    def phase(self):
        if self in (Case.CASE1, Case.CASE3):
            return PhaseKind.TRIVIAL
        return PhaseKind.NONTRIVIAL

    @property
    def sign(self):
        """H⁺ = ±ηHη⁻¹ 中的符号"""
        return 1 if self.kind is HermiticityKind.PSEUDO else -1

    @property
    def imaginary_split(self):
        """本征值差为纯虚数的情形（case2、case3）"""
        return self in (Case.CASE2, Case.CASE3)

    @classmethod
    def of(cls, kind, phase):
        table = {
            (HermiticityKind.PSEUDO, PhaseKind.TRIVIAL): cls.CASE1,
            (HermiticityKind.PSEUDO, PhaseKind.NONTRIVIAL): cls.CASE2,
            (HermiticityKind.ANTI, PhaseKind.TRIVIAL): cls.CASE3,
            (HermiticityKind.ANTI, PhaseKind.NONTRIVIAL): cls.CASE4,
        }
        return table[(kind, phase)]


@dataclass(frozen=True)
class KeyQuantities:
    """tr H、tr²−4det 以及 iH 对应的两个量"""

    sum: complex
    disc: complex
    i_sum: complex
    i_disc: complex

    def to_dict(self):
        return {
            "sum": self.sum,
            "disc": self.disc,
            "i_sum": self.i_sum,
            "i_disc": self.i_disc,
            "im_sum": abs(self.sum.imag),
            "im_disc": abs(self.disc.imag),
            "im_i_sum": abs(self.i_sum.imag),
            "im_i_disc": abs(self.i_disc.imag),
        }


@dataclass(frozen=True)
class Classification:
    """
    分类结果

    属性:
        kind: 厄米性类型
        phase_if_pseudo: 伪厄米时的相，不允许伪厄米时为 None
        phase_if_anti: 反伪厄米时的相
        case_labels: 允许的情形（按编号排序）
        diagnostics: 关键量及其虚部大小
        det: det H
    """

    kind: HermiticityKind
    phase_if_pseudo: PhaseKind = None
    phase_if_anti: PhaseKind = None
    case_labels: tuple = ()
    diagnostics: KeyQuantities = None
    det: complex = 0j
    exceptional_scale: float = field(default=0.0, compare=False)

    @property
    def exceptional(self):
        return PhaseKind.EXCEPTIONAL in (self.phase_if_pseudo, self.phase_if_anti)

    def phase_for(self, kind):
        return self.phase_if_pseudo if kind is HermiticityKind.PSEUDO else self.phase_if_anti

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "phase_if_pseudo": self.phase_if_pseudo.value if self.phase_if_pseudo else None,
            "phase_if_anti": self.phase_if_anti.value if self.phase_if_anti else None,
            "case_labels": [c.value for c in self.case_labels],
            "exceptional": self.exceptional,
            "diagnostics": dict(self.diagnostics.to_dict(), det=self.det),
        }


def key_quantities(H):
    """
    计算 tr H、tr[H]²−4det[H]、i·tr H 与 4det[H]−tr[H]²

    Args:
        H: 2×2 复矩阵

    Returns:
        KeyQuantities
    """
    H = MatOps.as_cmat(H, 2)
    tr = complex(H[0, 0] + H[1, 1])
    disc = complex((H[0, 0] - H[1, 1]) ** 2 + 4 * H[0, 1] * H[1, 0])
    return KeyQuantities(sum=tr, disc=disc, i_sum=1j * tr, i_disc=-disc)


def _is_real(q, tol):
    return abs(q.imag) <= tol.threshold(abs(q))


def _phase(disc_like, exceptional):
    """disc_like > 0 给出平凡相 (tr² > 4det 对应 case1；对 iH 取负号后同理)"""
    if exceptional:
        return PhaseKind.EXCEPTIONAL
    return PhaseKind.TRIVIAL if disc_like.real > 0 else PhaseKind.NONTRIVIAL


def classify(H, tol=None):
    """
    判定 H 的厄米性类型、相与允许的情形

    伪厄米要求 tr H 与 tr²−4det 同时为实数；反伪厄米要求 i·tr H 与 4det−tr² 同时为实数。
    |tr²−4det| ≤ classify_scale·max(1, ‖H‖²) 时判定为奇异点。

    Args:
        H: 2×2 复矩阵
        tol: Tolerances，默认使用标准容差

    Returns:
        Classification: 分类结果

    Raises:
        NotClassifiable: 两种类型都不满足；异常中带有诊断信息
    """
    logger = logging.getLogger(__name__)
    tol = tol or Tolerances()
    H = MatOps.as_cmat(H, 2)
    q = key_quantities(H)
    det = complex(H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0])

    pseudo = _is_real(q.sum, tol) and _is_real(q.disc, tol)
    anti = _is_real(q.i_sum, tol) and _is_real(q.i_disc, tol)
    scale = MatOps.frobenius_norm(H) ** 2
    exceptional = abs(q.disc) <= tol.threshold(scale)

    if pseudo and anti:
        kind = HermiticityKind.BOTH
    elif pseudo:
        kind = HermiticityKind.PSEUDO
    elif anti:
        kind = HermiticityKind.ANTI
    else:
        diagnostics = dict(q.to_dict(), det=det)
        logger.info(f"无法分类: tr={q.sum}, disc={q.disc}")
        raise NotClassifiable("H 既不是伪厄米也不是反伪厄米",
                              kind=HermiticityKind.NEITHER.value,
                              diagnostics=diagnostics)

    phase_pseudo = _phase(q.disc, exceptional) if pseudo else None
    # 对 iH：4det−tr² < 0（即 disc > 0）给出 case4 非平凡相
    phase_anti = None
    if anti:
        phase_anti = _phase(q.i_disc, exceptional)

    cases = []
    if phase_pseudo in (PhaseKind.TRIVIAL, PhaseKind.NONTRIVIAL):
        cases.append(Case.of(HermiticityKind.PSEUDO, phase_pseudo))
    if phase_anti in (PhaseKind.TRIVIAL, PhaseKind.NONTRIVIAL):
        cases.append(Case.of(HermiticityKind.ANTI, phase_anti))

    result = Classification(
        kind=kind,
        phase_if_pseudo=phase_pseudo,
        phase_if_anti=phase_anti,
        case_labels=tuple(sorted(cases, key=lambda c: c.value)),
        diagnostics=q,
        det=det,
        exceptional_scale=scale,
    )
    logger.debug(f"分类结果: {kind.value}, 情形 {[c.value for c in cases]}")
    return result


def is_hermitian(H, tol=None):
    """H = H⁺（在容差内）"""
    return MatOps.is_hermitian(MatOps.as_cmat(H, 2), tol)


def eigenvalue_constraints(E1, E2, case, tol=None):
    """
    检查本征值约束：
        case1: E1* = E1, E2* = E2
        case2: E2* = E1
        case3: E1* = −E1, E2* = −E2
        case4: E2* = −E1

    Returns:
        float: 约束的最大偏差
    """
    E1, E2 = complex(E1), complex(E2)
    if case is Case.CASE1:
        deviation = max(abs(E1.conjugate() - E1), abs(E2.conjugate() - E2))
    elif case is Case.CASE2:
        deviation = abs(E2.conjugate() - E1)
    elif case is Case.CASE3:
        deviation = max(abs(E1.conjugate() + E1), abs(E2.conjugate() + E2))
    else:
        deviation = abs(E2.conjugate() + E1)
    return float(deviation)
