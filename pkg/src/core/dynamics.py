import logging
from dataclasses import dataclass

import numpy as np

from src.core.config import Tolerances
from src.core.diagonalizer import eigenbasis
from src.core.errors import InputError
from src.core.linalg import IDENTITY, MatOps


def as_state(psi, field="psi0"):
    """
    校验二分量态矢量

    Raises:
        InputError: 形状错误、含非有限值或为零向量
    """
    try:
        arr = np.asarray(psi, dtype=complex)
    except (TypeError, ValueError) as e:
        raise InputError(f"{field} 无法转换为复向量: {e}", field=field)
    if arr.shape != (2,) or not np.all(np.isfinite(arr)):
        raise InputError(f"{field} 必须是2个有限复数", field=field)
    if not np.any(arr):
        raise InputError(f"{field} 不能为零向量", field=field)
    return arr


@dataclass(frozen=True)
class EvolutionReport:
    """
    期望值随时间的变化

    属性:
        times: 严格递增的时间点
        values: ⟨ψ(t)|A|ψ(t)⟩
        max_drift: max |values[k] − values[0]|
    """

    times: tuple
    values: tuple
    max_drift: float

    def to_dict(self):
        return {"times": list(self.times), "values": list(self.values), "max_drift": self.max_drift}

    def rows(self):
        """CSV 行：t, Re value, Im value"""
        return [(t, v.real, v.imag) for t, v in zip(self.times, self.values)]


class SpectralPropagator:
    """
    谱分解传播子

    使用 H = X⁻¹ diag(E1, E2) X（ℏ = 1）精确计算 exp(−iHt)ψ₀，
    不要求 H 属于某个情形，只要求 H 可对角化。

    属性:
        logger: 日志记录器
        system: H 的 EigenSystem
    """

    def __init__(self, H, tol=None):
        """
        Args:
            H: 2×2 复矩阵
            tol: Tolerances

        Raises:
            ExceptionalPoint: H 在奇异点，没有谱分解
        """
        self.logger = logging.getLogger(__name__)
        self.H = MatOps.as_cmat(H, 2)
        self.tol = tol or Tolerances()
        self.system = eigenbasis(self.H, None, None, self.tol)
        self.logger.debug(f"传播子本征值: {self.system.E1}, {self.system.E2}")

    def propagator(self, t):
        phases = np.exp(-1j * np.array([self.system.E1, self.system.E2]) * t)
        return self.system.Xinv @ np.diag(phases) @ self.system.X

    def evolve(self, psi0, t):
        return self.propagator(t) @ as_state(psi0)

    def expectation_series(self, A, psi0, times):
        """
        计算 ⟨ψ(t)|A|ψ(t)⟩，左矢为 |ψ(t)⟩ 的共轭转置

        在谱框架中求值：c(t) = diag(e^{−iE t})·Xψ₀，M = (X⁻¹)⁺AX⁻¹，
        值为 c(t)⁺Mc(t)。M 中不超过容差的矩阵元视为零，
        破缺相中 e^{2|Im E|t} 的增长因此不会放大舍入误差。

        Returns:
            EvolutionReport
        """
        A = MatOps.as_cmat(A, 2, field="A")
        psi0 = as_state(psi0)
        times = tuple(float(t) for t in times)
        if any(b <= a for a, b in zip(times, times[1:])):
            raise InputError("时间点必须严格递增", field="times")
        Xinv = self.system.Xinv
        M = Xinv.conj().T @ A @ Xinv
        limit = self.tol.eq_abs * max(1.0, float(np.max(np.abs(M))))
        M = np.where(np.abs(M) <= limit, 0, M)
        c0 = self.system.X @ psi0
        energies = np.array([self.system.E1, self.system.E2])
        values = []
        for t in times:
            c = np.exp(-1j * energies * t) * c0
            values.append(complex(np.vdot(c, M @ c)))
        drift = max((abs(v - values[0]) for v in values), default=0.0)
        if drift > 1e-6:
            self.logger.info(f"期望值漂移 {drift:.3e}")
        return EvolutionReport(times=times, values=tuple(values), max_drift=float(drift))


def evolve(H, psi0, t, tol=None):
    """
    ψ(t) = X⁻¹·diag(e^{−iE1 t}, e^{−iE2 t})·X·ψ₀

    Raises:
        ExceptionalPoint
    """
    return SpectralPropagator(H, tol).evolve(psi0, t)


def stationarity_check(H, eta, B=None, psi0=(1, 0), times=None, tol=None):
    """
    检查 ⟨ψ(t)|ηB|ψ(t)⟩ 是否守恒

    Args:
        H: 2×2 复矩阵
        eta: H 的度规
        B: 伪厄米时与 H 对易、反伪厄米时与 H 反对易的矩阵，默认 1₂
        psi0: 初态
        times: 时间点，默认 [0, 10] 上的 100 个点
        tol: Tolerances

    Returns:
        EvolutionReport
    """
    eta = MatOps.as_cmat(eta, 2, field="eta")
    B = IDENTITY if B is None else MatOps.as_cmat(B, 2, field="B")
    if times is None:
        times = np.linspace(0.0, 10.0, 100)
    return SpectralPropagator(H, tol).expectation_series(eta @ B, psi0, times)
