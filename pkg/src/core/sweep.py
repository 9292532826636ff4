import itertools
import logging
from dataclasses import dataclass

import numpy as np

from src.core.catalog import REGISTRY, get_entry
from src.core.classifier import HermiticityKind, PhaseKind, classify
from src.core.config import Tolerances
from src.core.diagonalizer import Branch, eigenvalues
from src.core.errors import (InputError, InvalidParameter, NotClassifiable,
                             NotFound, PseudoMetricError)
from src.core.metric import Normalization, PhaseVector, metric_general

OBSERVABLES = ("case", "disc", "eigenvalues", "det_sign", "min_eig", "residual")


@dataclass(frozen=True)
class GridAxis:
    """
    扫描轴：name=start:stop:num，num 个等间距点（含端点）
    """

    name: str
    start: float
    stop: float
    num: int

    @classmethod
    def parse(cls, text):
        try:
            name, bounds = text.split("=", 1)
            start, stop, num = bounds.split(":")
            axis = cls(name.strip(), float(start), float(stop), int(num))
        except ValueError:
            raise InputError(f"网格格式应为 name=start:stop:num: {text}", field="grid")
        if axis.num < 0:
            raise InputError(f"网格点数不能为负: {text}", field="grid")
        return axis

    @property
    def values(self):
        return np.linspace(self.start, self.stop, self.num)


class SweepRunner:
    """
    参数扫描器

    在目录条目的参数网格上逐点分类并构造度规，记录每个点的可观测量。
    网格按轴给出的顺序做字典序展开，输出顺序与网格顺序一致。

    属性:
        logger: 日志记录器
        entry_name: 目录条目名称
        fixed: 不扫描的参数
        last_error: 最近一个失败点的错误信息
    """

    def __init__(self, entry_name, fixed=None, N=None, pv=None, branch=None, tol=None,
                 max_points=1000000, observables=OBSERVABLES):
        self.logger = logging.getLogger(__name__)
        if entry_name not in REGISTRY:
            raise NotFound(f"目录中没有条目: {entry_name}", entry=entry_name)
        self.entry_cls = REGISTRY[entry_name]
        if self.entry_cls.dimension != 2:
            raise InvalidParameter(f"{entry_name} 不是 2×2 系统，不支持扫描", entry=entry_name)
        self.entry_name = entry_name
        self.fixed = dict(fixed or {})
        self.N = N or Normalization()
        self.pv = pv or PhaseVector()
        self.branch = branch or Branch()
        self.tol = tol or Tolerances()
        self.max_points = int(max_points)
        unknown = [o for o in observables if o not in OBSERVABLES]
        if unknown:
            raise InputError(f"未知的可观测量: {unknown}", field="observables")
        self.observables = tuple(o for o in OBSERVABLES if o in observables)
        self.last_error = None

    def header(self):
        columns = []
        for key, (kind, _) in self.entry_cls.schema.items():
            columns.extend([f"{key}_re", f"{key}_im"] if kind == "complex" else [key])
        columns.append("status")
        names = {
            "case": ["case"],
            "disc": ["disc_re", "disc_im"],
            "eigenvalues": ["E1_re", "E1_im", "E2_re", "E2_im"],
            "det_sign": ["det_eta_sign"],
            "min_eig": ["min_eta_eig"],
            "residual": ["residual"],
        }
        for o in self.observables:
            columns.extend(names[o])
        return columns

    def grid(self, axes):
        """
        展开网格

        Raises:
            NotFound: 轴名不是条目参数
            InputError: 点数超过上限
        """
        for axis in axes:
            if axis.name not in self.entry_cls.schema:
                raise NotFound(f"{self.entry_name} 没有参数: {axis.name}",
                               entry=self.entry_name, param=axis.name)
        total = int(np.prod([axis.num for axis in axes])) if axes else 1
        if total > self.max_points:
            raise InputError(f"网格点数 {total} 超过上限 {self.max_points}", field="grid")
        names = [axis.name for axis in axes]
        for values in itertools.product(*(axis.values for axis in axes)):
            params = dict(self.fixed)
            params.update(zip(names, (float(v) for v in values)))
            yield params

    def evaluate(self, params):
        """
        计算单个网格点

        Returns:
            list: 与 header() 对应的一行
        """
        entry = get_entry(self.entry_name, params)
        row = []
        for key, (kind, _) in entry.schema.items():
            value = entry.params[key]
            row.extend([value.real, value.imag] if kind == "complex" else [value])

        H = entry.hamiltonian
        values = {"case": None, "disc": (None, None), "eigenvalues": (None,) * 4,
                  "det_sign": None, "min_eig": None, "residual": None}
        status = "ok"
        try:
            result = classify(H, self.tol)
            disc = result.diagnostics.disc
            values["disc"] = (disc.real, disc.imag)
            if result.exceptional:
                status = "exceptional"
            else:
                kind = HermiticityKind.PSEUDO if result.kind.admits(HermiticityKind.PSEUDO) \
                    else HermiticityKind.ANTI
                q = "identity" if result.phase_for(kind) is PhaseKind.TRIVIAL else self.pv
                metric = metric_general(H, self.N, q, kind, self.branch, self.tol)
                values["case"] = metric.case.value
                E1, E2 = eigenvalues(H, metric.case, metric.branch, self.tol)
                values["eigenvalues"] = (E1.real, E1.imag, E2.real, E2.imag)
                values["det_sign"] = int(np.sign(np.linalg.det(metric.eta).real))
                if metric.hermitian:
                    values["min_eig"] = float(np.min(np.linalg.eigvalsh(metric.eta)))
                values["residual"] = metric.residual
        except NotClassifiable:
            status = "neither"
        except PseudoMetricError as e:
            status = type(e).__name__
            self.last_error = e.message

        row.append(status)
        for o in self.observables:
            v = values[o]
            row.extend(v if isinstance(v, tuple) else [v])
        return row

    def run(self, axes, progress_callback=None):
        """
        执行扫描

        Args:
            axes: GridAxis 列表
            progress_callback (callable): 进度回调函数，接收参数(current, params, status)

        Returns:
            list: 按网格顺序排列的行
        """
        rows = []
        status_index = self.header().index("status")
        for i, params in enumerate(self.grid(axes)):
            row = self.evaluate(params)
            rows.append(row)
            if progress_callback:
                progress_callback(i + 1, params, row[status_index])
        self.logger.info(f"扫描 {self.entry_name} 完成，共 {len(rows)} 个点")
        return rows
