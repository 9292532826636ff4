"""
示例哈密顿量目录

每个条目给出参数化的 H、各区域允许的情形，以及按闭式展示式逐项写出的度规 η，
用作通用构造 metric_general 的对照。
"""

import cmath
import logging
import math

import numpy as np

from src.core.classifier import Case, PhaseKind
from src.core.config import Tolerances
from src.core.diagonalizer import Branch
from src.core.errors import (CaseMismatch, InputError, InvalidImaginaryPart,
                             InvalidParameter, NotFound)
from src.core.leewick import build_lee_wick
from src.core.linalg import IDENTITY, SIGMA_1, SIGMA_3
from src.core.metric import Normalization, PhaseVector

logger = logging.getLogger(__name__)


def _sign(x):
    return 1.0 if x > 0 else (-1.0 if x < 0 else 0.0)


def _mat(a, b, c, d):
    return np.array([[a, b], [c, d]], dtype=complex)


class CatalogEntry:
    """
    目录条目基类

    子类需要定义 name、schema（参数名 → (类型, 默认值)）以及
    hamiltonian、half_trace、_half_gap、regime_cases、_oracle 方法。

    属性:
        params: 参数字典
        logger: 日志记录器
    """

    name = ""
    description = ""
    schema = {}
    dimension = 2

    def __init__(self, **params):
        self.logger = logging.getLogger(__name__)
        unknown = set(params) - set(self.schema)
        if unknown:
            raise NotFound(f"{self.name} 没有参数: {sorted(unknown)}", entry=self.name,
                           params=sorted(unknown))
        self.params = {}
        for key, (kind, default) in self.schema.items():
            value = params.get(key, default)
            try:
                value = complex(value) if kind == "complex" else float(value)
            except (TypeError, ValueError):
                raise InputError(f"参数 {key} 无法解析: {value}", field=key)
            if not cmath.isfinite(value):
                raise InputError(f"参数 {key} 必须为有限值", field=key)
            self.params[key] = value
        self._validate()

    def _validate(self):
        pass

    def __getattr__(self, item):
        params = self.__dict__.get("params", {})
        if item in params:
            return params[item]
        raise AttributeError(item)

    @property
    def hamiltonian(self):
        raise NotImplementedError

    def half_trace(self):
        return complex(np.trace(self.hamiltonian)) / 2

    def _half_gap(self):
        """|E1 − E2|/2 的闭式"""
        raise NotImplementedError

    def eigenvalues(self, case, branch=None):
        """
        展示式给出的本征值：tr H/2 ± (E1−E2)/2，case2/3 的差为纯虚数
        """
        branch = branch or Branch()
        self._require(case)
        gap = self._half_gap()
        h = branch.root.value * (1j * gap if case.imaginary_split else gap)
        return self.half_trace() + h, self.half_trace() - h

    def regime_cases(self, tol=None):
        raise NotImplementedError

    def _require(self, case, tol=None):
        cases = self.regime_cases(tol)
        if case not in cases:
            raise CaseMismatch(f"{self.name} 在当前参数下不允许 {case.value}",
                               requested=case.value, admitted=[c.value for c in cases])

    def oracle_metric(self, case, N=None, pv=None, branch=None, tol=None):
        """
        闭式度规

        Args:
            case: Case
            N: Normalization
            pv: PhaseVector（非平凡相）
            branch: Branch，root 对应展示式中本征值的 ±，circle 对应整体的 ⊕

        Returns:
            numpy.ndarray: η
        """
        N = N or Normalization()
        pv = pv or PhaseVector()
        branch = branch or Branch()
        self._require(case, tol)
        eta = self._oracle(case, N, pv, branch.root.value)
        return branch.circle.value * eta

    def _oracle(self, case, N, pv, b):
        raise NotImplementedError

    def to_dict(self):
        return {"name": self.name, "params": dict(self.params), "H": self.hamiltonian}

    @classmethod
    def describe(cls):
        return {
            "name": cls.name,
            "description": cls.description,
            "params": {k: {"type": kind, "default": default}
                       for k, (kind, default) in cls.schema.items()},
        }


def _near_zero(x, tol):
    return abs(x) <= (tol or Tolerances()).eq_abs


def _greater(a, b, tol):
    """a > b，带尺度感知阈值"""
    tol = tol or Tolerances()
    return a - b > tol.threshold(max(abs(a), abs(b)))


class ComplexGhost(CatalogEntry):
    """
    两个复质量鬼模：H = [[m − iε, γ*], [γ, m + iε]]
    tr[H]² − 4det[H] = 4(|γ|² − ε²)
    """

    name = "complex-ghost"
    description = "complex ghosts with mass m ∓ iε coupled by γ"
    schema = {"m": ("real", 1.0), "eps": ("real", 0.0), "gamma": ("complex", 1.0)}

    @property
    def hamiltonian(self):
        m, e, g = self.m, self.eps, self.gamma
        return _mat(m - 1j * e, g.conjugate(), g, m + 1j * e)

    def half_trace(self):
        return complex(self.m)

    def _half_gap(self):
        return math.sqrt(abs(abs(self.gamma) ** 2 - self.eps ** 2))

    def regime_cases(self, tol=None):
        g2, e2 = abs(self.gamma) ** 2, self.eps ** 2
        cases = []
        if _greater(g2, e2, tol):
            cases.append(Case.CASE1)
        if _greater(e2, g2, tol):
            cases.append(Case.CASE2)
        if _near_zero(self.m, tol):
            if _greater(e2, g2, tol):
                cases.append(Case.CASE3)
            if _greater(g2, e2, tol):
                cases.append(Case.CASE4)
        return tuple(cases)

    def _oracle(self, case, N, pv, b):
        gamma, eps = self.gamma, self.eps
        g = abs(gamma)
        if g == 0:
            return self._diagonal_oracle(case, N, pv, b)
        g1, g2 = gamma.real, gamma.imag
        gc = gamma.conjugate()
        M1 = _mat(0, gc / g, gamma / g, 0)
        M0 = _mat(1, 1j * eps * gc / g ** 2, -1j * eps * gamma / g ** 2, 1)
        M_eps = _mat(eps, 1j * gc, -1j * gamma, eps)
        A, B = N.trivial_weights()
        c1, c2 = N.nontrivial_weights()
        cos_phi, sin_phi = cmath.cos(pv.phi), cmath.sin(pv.phi)

        if case is Case.CASE1:
            w = math.sqrt(g ** 2 - eps ** 2)
            return A * (g / w) * M0 + B * b * M1
        if case is Case.CASE2:
            w = math.sqrt(eps ** 2 - g ** 2)
            sigma = _sign(w - b * eps)
            eta1 = c1 * sigma * ((cos_phi * g1 + sin_phi * g2) / g * M1
                                 + b * (sin_phi * g1 - cos_phi * g2) / w * M0)
            eta2 = c2 * sigma * ((sin_phi * g1 - cos_phi * g2) / g * M1
                                 - b * (sin_phi * g2 + cos_phi * g1) / w * M0)
            return eta1 + eta2
        if case is Case.CASE3:
            w = math.sqrt(eps ** 2 - g ** 2)
            sigma = _sign(w - b * eps)
            return A * (-b * sigma / w) * M_eps + B * sigma * SIGMA_3
        w = math.sqrt(g ** 2 - eps ** 2)
        eta1 = c1 / g * ((cos_phi * g2 - sin_phi * g1) / w * M_eps
                         - b * (sin_phi * g2 + cos_phi * g1) * SIGMA_3)
        eta2 = c2 / g * ((sin_phi * g2 + cos_phi * g1) / w * M_eps
                         + b * (cos_phi * g2 - sin_phi * g1) * SIGMA_3)
        return eta1 + eta2

    def _diagonal_oracle(self, case, N, pv, b):
        """
        γ = 0：H = diag(m − iε, m + iε)，本征基为单位阵（bε < 0）或置换框架（bε > 0）
        """
        swapped = b * _sign(self.eps) > 0
        if case.phase is PhaseKind.TRIVIAL:
            A, B = N.trivial_weights()
            return A * IDENTITY - (1 if swapped else -1) * B * SIGMA_3
        c1, c2 = N.nontrivial_weights()
        eta = c1 * pv.parity() + c2 * pv.orthogonal_parity()
        return -eta.T if swapped else eta


class BenderDas(CatalogEntry):
    """
    非对称二维哈密顿量 H = [[r e^{iθ}, s e^{iφ}], [t e^{−iφ}, r e^{−iθ}]]

    t = s、φ = 0 时退化为对称形式。反伪厄米情形要求 r cosθ = 0，即 θ = π/2 + ℓπ。
    """

    name = "bender-das"
    description = "asymmetric two-level Hamiltonian with r e^{±iθ} diagonal"
    schema = {"r": ("real", 1.0), "theta": ("real", 0.5), "s": ("real", 2.0),
              "t": ("real", 2.0), "phi": ("real", 0.0)}

    @classmethod
    def anti_limit(cls, r, s, t, phi=0.0, ell=0):
        """θ = π/2 + ℓπ 的条目"""
        return cls(r=r, theta=math.pi / 2 + ell * math.pi, s=s, t=t, phi=phi)

    @property
    def rho(self):
        return self.r * math.sin(self.theta)

    @property
    def hamiltonian(self):
        r, th, s, t, ph = self.r, self.theta, self.s, self.t, self.phi
        return _mat(r * cmath.exp(1j * th), s * cmath.exp(1j * ph),
                    t * cmath.exp(-1j * ph), r * cmath.exp(-1j * th))

    def half_trace(self):
        return complex(self.r * math.cos(self.theta))

    def _half_gap(self):
        return math.sqrt(abs(self.s * self.t - self.rho ** 2))

    def regime_cases(self, tol=None):
        st, rho2 = self.s * self.t, self.rho ** 2
        cases = []
        if _greater(st, rho2, tol):
            cases.append(Case.CASE1)
        if _greater(rho2, st, tol):
            cases.append(Case.CASE2)
        if _near_zero(self.r * math.cos(self.theta), tol):
            if _greater(self.r ** 2, st, tol):
                cases.append(Case.CASE3)
            if _greater(st, self.r ** 2, tol):
                cases.append(Case.CASE4)
        return tuple(cases)

    def _oracle(self, case, N, pv, b):
        s, t, ph, rho = self.s, self.t, self.phi, self.rho
        st = s * t
        A, B = N.trivial_weights()
        c1, c2 = N.nontrivial_weights()
        cm, sm = cmath.cos(pv.phi), cmath.sin(pv.phi)
        ch, sh = math.cos(ph), math.sin(ph)
        e_plus, e_minus = cmath.exp(1j * ph), cmath.exp(-1j * ph)
        M1 = _mat(0, e_plus, e_minus, 0)
        Mt = _mat(t, -1j * rho * e_plus, 1j * rho * e_minus, s)
        Mr = _mat(rho * t, -1j * st * e_plus, 1j * st * e_minus, rho * s)
        Dts = _mat(t, 0, 0, -s)

        if case is Case.CASE1:
            w = math.sqrt(st - rho ** 2)
            pref = math.sqrt(st) / w
            eta0 = A * pref * ((s + t) / (2 * st) * Mt + b * (s - t) / (2 * st) * w * M1)
            eta3 = B * pref * ((s - t) / (2 * st) * Mt + b * (s + t) / (2 * st) * w * M1)
            return eta0 + eta3
        if case is Case.CASE2:
            w = math.sqrt(rho ** 2 - st)
            sigma = _sign(w + b * rho)
            eta1 = c1 * sigma * ((cm * ch - sm * sh) * M1 + b * (cm * sh + sm * ch) / w * Mt)
            eta2 = c2 * sigma * ((sm * ch + cm * sh) * M1 + b * (sm * sh - cm * ch) / w * Mt)
            return eta1 + eta2
        if st == 0:
            raise InvalidParameter("反伪厄米闭式度规要求 st ≠ 0", field="s")
        if case is Case.CASE3:
            w = math.sqrt(self.r ** 2 - st)
            sigma = _sign(w + b * rho)
            eta0 = A * sigma * ((s - t) / (2 * st) * Dts + b * (s + t) / (2 * st * w) * Mr)
            eta3 = B * sigma * ((s + t) / (2 * st) * Dts + b * (s - t) / (2 * st * w) * Mr)
            return eta0 + eta3
        w = math.sqrt(st - self.r ** 2)
        pref = math.sqrt(st) / (w * st)
        eta1 = c1 * pref * (-b * (cm * ch - sm * sh) * w * Dts + (cm * sh + sm * ch) * Mr)
        eta2 = c2 * pref * (-b * (sm * ch + cm * sh) * w * Dts + (sm * sh - cm * ch) * Mr)
        return eta1 + eta2


class BmwMostafazadeh(CatalogEntry):
    """
    非对称推广的二能级哈密顿量

        H11 = r + t cosφ − i s sinφ      H12 = i(s cosφ − u) + t sinφ
        H21 = i(s cosφ + u) + t sinφ     H22 = r − t cosφ + i s sinφ

    本征值 r ± √(t² + u² − s²)；u = 0 时为对称形式。
    """

    name = "bmw-mostafazadeh"
    description = "generalized asymmetric two-level Hamiltonian with mixing angle φ"
    schema = {"r": ("real", 0.0), "s": ("real", 0.5), "t": ("real", 1.0),
              "u": ("real", 0.0), "phi": ("real", 0.0)}

    @property
    def hamiltonian(self):
        r, s, t, u, ph = self.r, self.s, self.t, self.u, self.phi
        c, sn = math.cos(ph), math.sin(ph)
        return _mat(r + t * c - 1j * s * sn, 1j * (s * c - u) + t * sn,
                    1j * (s * c + u) + t * sn, r - t * c + 1j * s * sn)

    def half_trace(self):
        return complex(self.r)

    def _half_gap(self):
        return math.sqrt(abs(self.t ** 2 + self.u ** 2 - self.s ** 2))

    def regime_cases(self, tol=None):
        lhs, s2 = self.t ** 2 + self.u ** 2, self.s ** 2
        cases = []
        if _greater(lhs, s2, tol):
            cases.append(Case.CASE1)
        if _greater(s2, lhs, tol):
            cases.append(Case.CASE2)
        if _near_zero(self.r, tol):
            if _greater(s2, lhs, tol):
                cases.append(Case.CASE3)
            if _greater(lhs, s2, tol):
                cases.append(Case.CASE4)
        return tuple(cases)

    def commutant_scale(self, branch=None):
        """
        u = 0 时与 H 对易的标量 B，使 ηB = (1/√(t²−s²))[[t, is], [−is, t]]
        """
        branch = branch or Branch()
        if not _near_zero(self.u, None):
            raise InvalidParameter("只在 u = 0 时有定义", field="u")
        b = branch.root.value
        w = self._half_gap()
        c, sn = math.cos(self.phi), math.sin(self.phi)
        return math.sqrt((b * w + self.t * c) ** 2 + (self.s * sn) ** 2) / (self.t + b * c * w)

    def symmetric_metric(self):
        """(1/√(t²−s²))[[t, is], [−is, t]]"""
        w = math.sqrt(self.t ** 2 - self.s ** 2)
        return _mat(self.t, 1j * self.s, -1j * self.s, self.t) / w

    def _oracle(self, case, N, pv, b):
        s, t, u, ph = self.s, self.t, self.u, self.phi
        c, sn = math.cos(ph), math.sin(ph)
        A, B = N.trivial_weights()
        c1, c2 = N.nontrivial_weights()
        cm, sm = cmath.cos(pv.phi), cmath.sin(pv.phi)
        rot = _mat(c, sn, sn, -c)
        Ks = _mat(s, 1j * t, -1j * t, s)
        Kt = _mat(t, 1j * s, -1j * s, t)
        J = _mat(0, -1, 1, 0)
        L = _mat(-sn, c, c, sn)
        w = self._half_gap()

        if case in (Case.CASE1, Case.CASE4):
            pref = 1 / (w * math.sqrt((b * w + t * c) ** 2 + (s * sn) ** 2))
        else:
            pref = 1 / (w * math.sqrt((b * w - s * sn) ** 2 + (t * c) ** 2))

        if case is Case.CASE1:
            S0 = pref * (_mat(t ** 2 + u ** 2, 1j * s * t, -1j * s * t, t ** 2 + u ** 2)
                         + s * u * rot + b * c * w * Kt)
            S3 = pref * (c * ((t ** 2 - s ** 2) * rot - u * Ks) + b * w * (t * rot + 1j * u * J))
            return A * S0 + B * S3
        if case is Case.CASE3:
            S0 = pref * (s * Ks + s * u * rot - b * w * (sn * Ks + u * SIGMA_1))
            S3 = pref * (w ** 2 * SIGMA_3 + c * ((t ** 2 - s ** 2) * rot - u * Ks) + b * s * w * L)
            return A * S0 + B * S3
        if case is Case.CASE2:
            S1 = pref * (sn * (u * Ks - (t ** 2 - s ** 2) * rot) - b * w * (u * IDENTITY + s * rot))
            S2 = -pref * (_mat(t * s, 1j * (s ** 2 - u ** 2), -1j * (s ** 2 - u ** 2), t * s)
                          + t * u * rot - b * sn * w * Kt)
        else:
            S1 = pref * (u * (sn * Ks + u * SIGMA_1) + (c * (t ** 2 - s ** 2) + b * t * w) * L)
            S2 = -pref * (t * Ks + t * u * rot + b * w * (c * Ks + u * SIGMA_3))
        return c1 * (cm * S1 + sm * S2) + c2 * (sm * S1 - cm * S2)


class FeshbachVillars(CatalogEntry):
    """
    Klein–Gordon 方程的两分量形式：H = (σ₃ + iσ₂)p²/2m + mσ₃，ω = √(p² + m²)
    """

    name = "feshbach-villars"
    description = "two-component Klein-Gordon Hamiltonian"
    schema = {"m": ("real", 1.0), "p2": ("real", 0.0)}

    def _validate(self):
        if self.m <= 0:
            raise InvalidParameter("要求 m > 0", field="m")
        if self.p2 < 0:
            raise InvalidParameter("要求 p² ≥ 0", field="p2")

    @property
    def omega(self):
        return math.sqrt(self.p2 + self.m ** 2)

    @property
    def hamiltonian(self):
        q = self.p2 / (2 * self.m)
        return _mat(self.m + q, q, -q, -(self.m + q))

    def half_trace(self):
        return 0j

    def _half_gap(self):
        return self.omega

    def regime_cases(self, tol=None):
        return (Case.CASE1, Case.CASE4)

    def _oracle(self, case, N, pv, b):
        if case is not Case.CASE1:
            raise CaseMismatch("只有 case1 有闭式度规", requested=case.value)
        A, B = N.trivial_weights()
        return A * (SIGMA_3 @ self.hamiltonian) / self.omega + b * B * SIGMA_3


class ZnojilWdw(CatalogEntry):
    """
    Wheeler–deWitt 方程的二维模型：H = [[0, e^{2τ}], [1, 0]]，本征值 ±e^τ
    要求 Im τ = ℓπ。
    """

    name = "znojil-wdw"
    description = "Wheeler-deWitt toy Hamiltonian"
    schema = {"tau": ("complex", 0.0)}

    def _validate(self):
        tol = Tolerances()
        ell = round(self.tau.imag / math.pi)
        if abs(self.tau.imag - ell * math.pi) > tol.threshold(abs(self.tau.imag)):
            raise InvalidImaginaryPart("Im τ 必须为 π 的整数倍", tau=self.tau)
        self.ell = int(ell)

    @property
    def hamiltonian(self):
        # e^{2iℓπ} = 1
        return _mat(0, math.exp(2 * self.tau.real), 1, 0)

    def half_trace(self):
        return 0j

    def _half_gap(self):
        return math.exp(self.tau.real)

    def regime_cases(self, tol=None):
        return (Case.CASE1, Case.CASE4)

    def _oracle(self, case, N, pv, b):
        if case is not Case.CASE1:
            raise CaseMismatch("只有 case1 有闭式度规", requested=case.value)
        R = self.tau.real
        parity = (-1) ** self.ell
        p = b * parity
        n1, n2 = abs(N.N1) ** 2, abs(N.N2) ** 2
        off = p * parity
        first = n1 * math.exp(R) / 2 * _mat(math.exp(-R), off, off, math.exp(R))
        second = n2 * math.exp(-R) / 2 * _mat(math.exp(-R), -off, -off, math.exp(R))
        return first + second

    def normalization_from_beta(self, beta, branch=None):
        """
        由 β 恢复 |N1|² = (1 ± (−1)^ℓβ)e^{−Re τ}，|N2|² = (1 ∓ (−1)^ℓβ)e^{Re τ}

        Raises:
            InvalidParameter: |β| ≥ 1，此时模方不能为正
        """
        branch = branch or Branch()
        beta = float(beta)
        if abs(beta) >= 1:
            raise InvalidParameter("要求 |β| < 1", field="beta", beta=beta)
        R = self.tau.real
        p = branch.root.value * (-1) ** self.ell
        signed = p * (-1) ** self.ell * beta
        n1 = (1 + signed) * math.exp(-R)
        n2 = (1 - signed) * math.exp(R)
        return Normalization(math.sqrt(n1), math.sqrt(n2))

    def metric_from_beta(self, beta, branch=None):
        """⊕[[e^{−Re τ}, β], [β, e^{Re τ}]]"""
        branch = branch or Branch()
        N = self.normalization_from_beta(beta, branch)
        return self.oracle_metric(Case.CASE1, N, None, branch)


class LeeWickEntry(CatalogEntry):
    """4×4 Lee–Wick 振子；度规与 Ω 无关"""

    name = "lee-wick"
    description = "Lee-Wick fermionic oscillator (4x4)"
    schema = {"omega": ("complex", 1 - 0.5j)}
    dimension = 4

    @property
    def system(self):
        return build_lee_wick(self.omega)

    @property
    def hamiltonian(self):
        return self.system.H

    def regime_cases(self, tol=None):
        return ()

    def oracle_metric(self, case=None, N=None, pv=None, branch=None, tol=None):
        return self.system.eta


def complex_ghost(m, eps, gamma):
    return ComplexGhost(m=m, eps=eps, gamma=gamma)


def bender_das(r, theta, s, t, phi=0.0):
    return BenderDas(r=r, theta=theta, s=s, t=t, phi=phi)


def bmw_mostafazadeh(r, s, t, u, phi):
    return BmwMostafazadeh(r=r, s=s, t=t, u=u, phi=phi)


def feshbach_villars(m, p2):
    return FeshbachVillars(m=m, p2=p2)


def znojil_wdw(tau):
    return ZnojilWdw(tau=tau)


REGISTRY = {cls.name: cls for cls in
            (ComplexGhost, BenderDas, BmwMostafazadeh, FeshbachVillars, ZnojilWdw, LeeWickEntry)}


def catalog_list():
    """
    Returns:
        list: 每个条目的名称、说明和参数模式，按注册顺序排列
    """
    return [cls.describe() for cls in REGISTRY.values()]


def get_entry(name, params=None):
    """
    按名称构造条目

    Raises:
        NotFound: 条目或参数不存在
    """
    if name not in REGISTRY:
        raise NotFound(f"目录中没有条目: {name}", entry=name, available=list(REGISTRY))
    logger.debug(f"构造目录条目 {name}: {params}")
    return REGISTRY[name](**(params or {}))
