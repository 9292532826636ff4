import logging
import math

import numpy as np

from src.core.catalog import REGISTRY, ZnojilWdw, catalog_list, get_entry
from src.core.classifier import Case, HermiticityKind, PhaseKind, classify, is_hermitian
from src.core.diagonalizer import Branch
from src.core.dynamics import stationarity_check
from src.core.errors import (CaseMismatch, InputError, InvalidParameter,
                             PseudoMetricError, VerificationFailed)
from src.core.involution import (GeneralParity, c_operator, involution_constraint_check,
                                 involution_scan)
from src.core.leewick import build_lee_wick, spectrum, verify_lee_wick
from src.core.metric import (Normalization, PhaseVector, metric_general, metric_trivial,
                             select_case, verify_pseudo_hermiticity)
from src.core.sweep import OBSERVABLES, GridAxis, SweepRunner
from src.utils.file_utils import FileUtils
from src.utils.json_codec import MatrixCodec

KINDS = {"pseudo": HermiticityKind.PSEUDO, "anti": HermiticityKind.ANTI}


class CommandRunner:
    """
    命令执行器

    每个 cmd_* 方法返回 (输出文本, 失败异常或 None)。输出总是先写出，
    失败异常随后抛出，由入口转换为标准错误上的单行JSON和退出码。

    属性:
        logger: 日志记录器
        config: Config 实例
        tol: 当前容差
    """

    def __init__(self, config):
        self.logger = logging.getLogger(__name__)
        self.config = config
        self.tol = config.tolerances()

    def run(self, args):
        """
        执行子命令

        Returns:
            int: 退出码（成功为 0）

        Raises:
            PseudoMetricError: 领域错误或输入错误
        """
        handler = getattr(self, "cmd_" + args.command.replace("-", "_"))
        self.logger.info(f"执行命令: {args.command}")
        text, failure = handler(args)
        FileUtils.write_text(text, args.output)
        if failure is not None:
            raise failure
        return 0

    # 输入解析

    def _document(self, args):
        if not args.input:
            return {}
        doc = MatrixCodec.loads(FileUtils.read_text(args.input), field="input")
        if isinstance(doc, list):
            return {"h": doc}
        if not isinstance(doc, dict):
            raise InputError("input 必须是JSON对象或矩阵", field="input")
        return doc

    def _matrix(self, text, field):
        return MatrixCodec.decode_matrix(MatrixCodec.loads(FileUtils.read_text(text), field=field),
                                         dim=2, field=field)

    def _params(self, name, items):
        schema = REGISTRY[name].schema if name in REGISTRY else {}
        params = {}
        for item in items:
            if "=" not in item:
                raise InputError(f"参数格式应为 NAME=VALUE: {item}", field="param")
            key, value = item.split("=", 1)
            key = key.strip()
            kind = schema.get(key, ("complex", None))[0]
            if kind == "complex":
                params[key] = MatrixCodec.decode_complex(value, field=key)
            else:
                try:
                    params[key] = float(value)
                except ValueError:
                    raise InputError(f"参数 {key} 必须为实数: {value}", field=key)
        return params

    def _hamiltonian(self, args, doc):
        if args.h is not None:
            return self._matrix(args.h, "h")
        if args.entry is not None:
            entry = get_entry(args.entry, self._params(args.entry, args.param))
            if entry.dimension != 2:
                raise InvalidParameter(f"{args.entry} 不是 2×2 系统", entry=args.entry)
            return entry.hamiltonian
        for key in ("h", "H"):
            if key in doc:
                return MatrixCodec.decode_matrix(doc[key], dim=2, field=key)
        raise InputError("需要通过 --h、--entry 或 --input 提供 H", field="h")

    def _flag(self, value, key):
        return value if value is not None else self.config.get(key)

    def _normalization(self, args):
        n1 = MatrixCodec.decode_complex(self._flag(args.n1, "metric.n1"), field="n1")
        n2 = MatrixCodec.decode_complex(self._flag(args.n2, "metric.n2"), field="n2")
        return Normalization(n1, n2)

    def _phase_vector(self, args):
        return PhaseVector(MatrixCodec.decode_complex(self._flag(args.phi, "metric.phi"), field="phi"))

    def _branch(self, args):
        return Branch.of(self._flag(args.branch, "metric.branch"),
                         self._flag(args.circle, "metric.circle"))

    def _metric(self, H, args, kind=None):
        kind = kind or KINDS.get(args.kind)
        case = select_case(H, kind, args.q, self.tol)
        q = "identity" if case.phase is PhaseKind.TRIVIAL else self._phase_vector(args)
        return metric_general(H, self._normalization(args), q, case.kind, self._branch(args), self.tol)

    def _dynamics_metric(self, H, args):
        """未给出 η 时按分类构造；同时属于两类时优先伪厄米"""
        kind = KINDS.get(args.kind)
        if kind is None:
            result = classify(H, self.tol)
            if result.kind.admits(HermiticityKind.PSEUDO):
                kind = HermiticityKind.PSEUDO
                if result.exceptional and is_hermitian(H, self.tol):
                    self.logger.info("H 厄米且本征值简并，使用 η = 1₂")
                    return np.eye(2, dtype=complex)
        metric = self._metric(H, args, kind)
        if metric.sign < 0 and args.b is None:
            raise CaseMismatch("反伪厄米时需要通过 --b 给出与 H 反对易的 B",
                               case=metric.case.value)
        return metric.eta

    def _json(self, payload):
        return MatrixCodec.dumps(payload) + "\n"

    def _require_json(self, args):
        if args.format == "csv":
            raise InputError(f"{args.command} 只支持JSON输出", field="format")

    def _check_residual(self, residual, what):
        limit = float(self.config.get("verify.residual_limit"))
        if residual > limit:
            return VerificationFailed(f"{what}残差 {residual:.3e} 超过上限 {limit:.1e}",
                                      residual=residual, limit=limit)
        return None

    # 子命令

    def cmd_classify(self, args):
        self._require_json(args)
        H = self._hamiltonian(args, self._document(args))
        payload = classify(H, self.tol).to_dict()
        payload["hermitian"] = is_hermitian(H, self.tol)
        return self._json(payload), None

    def cmd_metric(self, args):
        self._require_json(args)
        H = self._hamiltonian(args, self._document(args))
        result = self._metric(H, args)
        payload = {"H": H}
        payload.update(result.to_dict())
        return self._json(payload), self._check_residual(result.residual, "度规")

    def cmd_verify(self, args):
        self._require_json(args)
        doc = self._document(args)
        H = self._hamiltonian(args, doc)
        if args.eta is not None:
            eta = self._matrix(args.eta, "eta")
        elif "eta" in doc:
            eta = MatrixCodec.decode_matrix(doc["eta"], dim=2, field="eta")
        else:
            raise InputError("需要通过 --eta 或 --input 提供 η", field="eta")
        sign_label = args.sign or doc.get("sign")
        if sign_label is None:
            result = classify(H, self.tol)
            if result.kind is HermiticityKind.BOTH:
                raise CaseMismatch("kind required: 需要 --sign", kind=result.kind.value)
            sign_label = result.kind.value
        if sign_label not in KINDS:
            raise InputError(f"sign 只能是 pseudo 或 anti: {sign_label}", field="sign")
        sign = 1 if sign_label == "pseudo" else -1
        residual = verify_pseudo_hermiticity(H, eta, sign, self.tol)
        failure = self._check_residual(residual, "定义关系")
        payload = {"residual": residual, "sign": sign_label, "passed": failure is None}
        return self._json(payload), failure

    def cmd_involution(self, args):
        self._require_json(args)
        H = self._hamiltonian(args, self._document(args))
        N = self._normalization(args)
        constraint = involution_constraint_check(H, N, self.tol)
        eta = metric_trivial(H, N, Case.CASE1, self._branch(args), self.tol).eta
        B = None if args.b is None else self._matrix(args.b, "b")
        result = c_operator(eta, GeneralParity(args.phi_p), B, H, 1, self.tol)
        if args.scan_points < 1:
            raise InputError("scan-points 必须为正整数", field="scan_points")
        angles = np.linspace(0.0, math.pi, args.scan_points, endpoint=False)
        residuals = involution_scan(eta, angles, B, self.tol)
        payload = {
            "constraint": constraint.to_dict(),
            "eta": eta,
            "c_operator": result.to_dict(),
            "scan": {
                "points": int(args.scan_points),
                "min_residual": float(residuals.min()),
                "max_residual": float(residuals.max()),
            },
        }
        return self._json(payload), None

    def cmd_catalog(self, args):
        self._require_json(args)
        if args.name is None:
            return self._json({"entries": catalog_list()}), None
        entry = get_entry(args.name, self._params(args.name, args.param))
        payload = {"entry": entry.to_dict()}
        if entry.dimension != 2:
            payload["eta"] = entry.oracle_metric()
            return self._json(payload), None

        payload["classification"] = self._classification_or_error(entry.hamiltonian)
        cases = entry.regime_cases(self.tol)
        payload["regime_cases"] = [c.value for c in cases]
        N, pv, branch = self._normalization(args), self._phase_vector(args), self._branch(args)
        oracle = {}
        if args.case is not None:
            oracle[args.case] = entry.oracle_metric(Case(args.case), N, pv, branch, self.tol)
        else:
            for case in cases:
                try:
                    oracle[case.value] = entry.oracle_metric(case, N, pv, branch, self.tol)
                except (CaseMismatch, InvalidParameter) as e:
                    oracle[case.value] = e.to_dict()
        payload["oracle"] = oracle
        if args.beta is not None:
            if not isinstance(entry, ZnojilWdw):
                raise InputError("--beta 只适用于 znojil-wdw", field="beta")
            payload["beta"] = {
                "normalization": entry.normalization_from_beta(args.beta, branch).to_dict(),
                "eta": entry.metric_from_beta(args.beta, branch),
            }
        return self._json(payload), None

    def _classification_or_error(self, H):
        try:
            return classify(H, self.tol).to_dict()
        except PseudoMetricError as e:
            return e.to_dict()

    def cmd_sweep(self, args):
        observables = OBSERVABLES
        if args.observables:
            observables = tuple(o.strip() for o in args.observables.split(",") if o.strip())
        runner = SweepRunner(
            args.entry,
            fixed=self._params(args.entry, args.param),
            N=self._normalization(args),
            pv=self._phase_vector(args),
            branch=self._branch(args),
            tol=self.tol,
            max_points=self._flag(args.max_points, "sweep.max_points"),
            observables=observables,
        )
        axes = [GridAxis.parse(text) for text in args.grid]
        rows = runner.run(axes)
        header = runner.header()
        if args.format == "json":
            return self._json([dict(zip(header, row)) for row in rows]), None
        return MatrixCodec.to_csv(header, rows), None

    def cmd_dynamics(self, args):
        doc = self._document(args)
        H = self._hamiltonian(args, doc)
        if args.eta is not None:
            eta = self._matrix(args.eta, "eta")
        elif "eta" in doc:
            eta = MatrixCodec.decode_matrix(doc["eta"], dim=2, field="eta")
        else:
            eta = self._dynamics_metric(H, args)
        B = None if args.b is None else self._matrix(args.b, "b")
        if args.psi0 is not None:
            psi0 = [MatrixCodec.decode_complex(v, field="psi0") for v in args.psi0]
        else:
            psi0 = [MatrixCodec.decode_complex(v, field="psi0") for v in doc.get("psi0", [1, 0])]
        t_max = float(self._flag(args.t_max, "dynamics.t_max"))
        samples = int(self._flag(args.samples, "dynamics.samples"))
        if samples < 1 or t_max <= 0:
            raise InputError("需要 samples ≥ 1 且 t-max > 0", field="samples")
        times = np.linspace(0.0, t_max, samples)
        report = stationarity_check(H, eta, B, psi0, times, self.tol)
        if args.format == "csv":
            return MatrixCodec.to_csv(["t", "re", "im"], report.rows()), None
        return self._json({"eta": eta, "report": report.to_dict()}), None

    def cmd_lee_wick(self, args):
        self._require_json(args)
        omega = MatrixCodec.decode_complex(args.omega, field="omega")
        system = build_lee_wick(omega, args.variant)
        report = verify_lee_wick(system)
        payload = {
            "system": system.to_dict(),
            "report": report.to_dict(),
            "spectrum": [{"m": m, "n": n, "E": E} for m, n, E in spectrum(omega)],
        }
        return self._json(payload), self._check_residual(report.max_residual, "Lee–Wick 关系")
