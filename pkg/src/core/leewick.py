"""
Lee–Wick 费米振子的 4×4 矩阵表示

D̄ = B⁺、B̄ = D⁺ 由 2×2 升降算符的张量积构造，H = (Ω/2)(D̄B − BD̄) + (Ω*/2)(B̄D − DB̄)，ℏ = 1。
'commuting' 变体去掉 B̄、D 中的 −σ₃ 因子，交叉关系由反对易变为对易。
"""

import cmath
import logging
from dataclasses import dataclass

import numpy as np

from src.core.errors import InputError
from src.core.linalg import IDENTITY, SIGMA_3, MatOps

logger = logging.getLogger(__name__)

RAISE = np.array([[0, 1], [0, 0]], dtype=complex)
LOWER = np.array([[0, 0], [1, 0]], dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

VARIANTS = ("anticommuting", "commuting")


def _metric(variant):
    eta = np.zeros((4, 4), dtype=complex)
    eta[0, 0] = -1 if variant == "anticommuting" else 1
    eta[1, 2] = eta[2, 1] = eta[3, 3] = 1
    return eta


@dataclass(frozen=True)
class LeeWickSystem:
    """
    属性:
        omega: 复频率 Ω
        variant: 'anticommuting' 或 'commuting'
        H, Dbar, Bbar, D, B, eta: 4×4 矩阵
    """

    omega: complex
    variant: str
    H: np.ndarray
    Dbar: np.ndarray
    Bbar: np.ndarray
    D: np.ndarray
    B: np.ndarray
    eta: np.ndarray

    def to_dict(self):
        return {
            "omega": self.omega,
            "variant": self.variant,
            "H": self.H,
            "Dbar": self.Dbar,
            "Bbar": self.Bbar,
            "D": self.D,
            "B": self.B,
            "eta": self.eta,
        }


@dataclass(frozen=True)
class LeeWickReport:
    """
    各关系的残差（Frobenius 范数）

    属性:
        pseudo_hermiticity: ‖H⁺ − ηHη⁻¹‖
        exchange: D⁺ = ηD̄η⁻¹ 等四个关系
        pseudo_brackets: {D,D̄}、{D,B̄}、{B,D̄}、{B,B̄}（commuting 变体中 D̄、B̄ 的同类项为对易子）
        standard_brackets: {D,D⁺}、{B,B⁺} 与交叉项
        nilpotency: {D,D}、{B,B}、{D̄,D̄}、{B̄,B̄}
    """

    pseudo_hermiticity: float
    exchange: dict
    pseudo_brackets: dict
    standard_brackets: dict
    nilpotency: dict

    @property
    def max_residual(self):
        families = (self.exchange, self.pseudo_brackets, self.standard_brackets, self.nilpotency)
        return max([self.pseudo_hermiticity] + [v for f in families for v in f.values()])

    def to_dict(self):
        return {
            "pseudo_hermiticity": self.pseudo_hermiticity,
            "exchange": self.exchange,
            "pseudo_brackets": self.pseudo_brackets,
            "standard_brackets": self.standard_brackets,
            "nilpotency": self.nilpotency,
            "max_residual": self.max_residual,
        }


def build_lee_wick(omega, variant="anticommuting"):
    """
    构造 Lee–Wick 系统

    Args:
        omega: 复频率 Ω
        variant: 'anticommuting'（默认）或 'commuting'

    Returns:
        LeeWickSystem
    """
    omega = complex(omega)
    if not cmath.isfinite(omega):
        raise InputError(f"Ω 必须为有限复数: {omega}", field="omega")
    if variant not in VARIANTS:
        raise InputError(f"未知变体: {variant}", field="variant")

    left = -SIGMA_3 if variant == "anticommuting" else IDENTITY
    Dbar = MatOps.kron(RAISE, IDENTITY)
    B = MatOps.kron(LOWER, IDENTITY)
    Bbar = MatOps.kron(left, RAISE)
    D = MatOps.kron(left, LOWER)
    H = (omega / 2) * MatOps.commutator(Dbar, B) + (omega.conjugate() / 2) * MatOps.commutator(Bbar, D)
    return LeeWickSystem(omega=omega, variant=variant, H=H, Dbar=Dbar, Bbar=Bbar, D=D, B=B,
                         eta=_metric(variant))


def verify_lee_wick(system, eta=None):
    """
    计算所有代数关系的残差

    Args:
        system: LeeWickSystem
        eta: 可选，替换 system.eta 用于检验关系的灵敏度

    Returns:
        LeeWickReport
    """
    eta = system.eta if eta is None else MatOps.as_cmat(eta, 4, field="eta")
    eta_inv = MatOps.inverse(eta)
    D, B, Dbar, Bbar = system.D, system.B, system.Dbar, system.Bbar
    cross = MatOps.anticommutator if system.variant == "anticommuting" else MatOps.commutator
    norm = np.linalg.norm

    def dag(M):
        return M.conj().T

    report = LeeWickReport(
        pseudo_hermiticity=float(norm(dag(system.H) - eta @ system.H @ eta_inv)),
        exchange={
            "D_dag": float(norm(dag(D) - eta @ Dbar @ eta_inv)),
            "B_dag": float(norm(dag(B) - eta @ Bbar @ eta_inv)),
            "Dbar_dag": float(norm(dag(Dbar) - eta @ D @ eta_inv)),
            "Bbar_dag": float(norm(dag(Bbar) - eta @ B @ eta_inv)),
        },
        pseudo_brackets={
            "D_Dbar": float(norm(cross(D, Dbar))),
            "D_Bbar": float(norm(MatOps.anticommutator(D, Bbar) - IDENTITY_4)),
            "B_Dbar": float(norm(MatOps.anticommutator(B, Dbar) - IDENTITY_4)),
            "B_Bbar": float(norm(cross(B, Bbar))),
        },
        standard_brackets={
            "D_Ddag": float(norm(MatOps.anticommutator(D, dag(D)) - IDENTITY_4)),
            "B_Bdag": float(norm(MatOps.anticommutator(B, dag(B)) - IDENTITY_4)),
            "D_Bdag": float(norm(cross(D, dag(B)))),
            "D_B": float(norm(cross(D, B))),
        },
        nilpotency={
            "D_D": float(norm(MatOps.anticommutator(D, D))),
            "B_B": float(norm(MatOps.anticommutator(B, B))),
            "Dbar_Dbar": float(norm(MatOps.anticommutator(Dbar, Dbar))),
            "Bbar_Bbar": float(norm(MatOps.anticommutator(Bbar, Bbar))),
        },
    )
    logger.debug(f"Lee–Wick 最大残差: {report.max_residual:.3e}")
    return report


def spectrum(omega):
    """
    E_{m,n} = Ω(m−½) + Ω*(n−½)，m, n ∈ {0, 1}，按 H 对角元的顺序排列

    Returns:
        list: [(m, n, E), ...]
    """
    omega = complex(omega)
    levels = [(1, 1), (1, 0), (0, 1), (0, 0)]
    return [(m, n, omega * (m - 0.5) + omega.conjugate() * (n - 0.5)) for m, n in levels]
