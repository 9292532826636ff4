import argparse

from src.core.errors import InputError


class CliParser(argparse.ArgumentParser):
    """参数解析失败时抛出 InputError（退出码 3），而不是直接退出"""

    def error(self, message):
        raise InputError(f"命令行参数错误: {message}", field="argv")


def _common_parent():
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("通用选项")
    group.add_argument("--tol-abs", type=float, default=None, help="逐元素比较的绝对容差")
    group.add_argument("--tol-rel", type=float, default=None, help="逐元素比较的相对容差")
    group.add_argument("--classify-scale", type=float, default=None, help="实数性判定的尺度因子")
    fmt = group.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    group.add_argument("--input", default=None, help="输入文件或内联JSON")
    group.add_argument("--output", default=None, help="输出文件，默认标准输出")
    group.add_argument("-v", "--verbose", action="count", default=0)
    group.add_argument("--log-file", default=None)
    return parent


def _hamiltonian_args(parser):
    parser.add_argument("--h", dest="h", default=None,
                        help="2×2 复矩阵 JSON，元素为 [re, im]；也可用 @文件")
    parser.add_argument("--entry", default=None, help="从目录条目取 H")
    parser.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                        help="目录条目参数，复数写作 re,im")


def _metric_args(parser):
    parser.add_argument("--kind", choices=["pseudo", "anti"], default=None)
    parser.add_argument("--q", choices=["identity", "parity"], default=None)
    parser.add_argument("--phi", default=None, help="相位 φ，re,im")
    parser.add_argument("--n1", default=None, help="归一化 N1，re,im")
    parser.add_argument("--n2", default=None, help="归一化 N2，re,im")
    parser.add_argument("--branch", choices=["plus", "minus"], default=None)
    parser.add_argument("--circle", choices=["plus", "minus"], default=None)


def build_parser():
    """
    构造命令行解析器

    Returns:
        CliParser: 带 classify、metric、verify、involution、catalog、sweep、dynamics、lee-wick 子命令
    """
    parent = _common_parent()
    parser = CliParser(
        prog="pseudometric",
        description="二维伪厄米与反伪厄米哈密顿量的度规构造与校验",
    )
    sub = parser.add_subparsers(dest="command", parser_class=CliParser)
    sub.required = True

    p = sub.add_parser("classify", parents=[parent], help="判定厄米性类型、相与情形")
    _hamiltonian_args(p)

    p = sub.add_parser("metric", parents=[parent], help="构造度规 η")
    _hamiltonian_args(p)
    _metric_args(p)

    p = sub.add_parser("verify", parents=[parent], help="计算 H⁺ = ±ηHη⁻¹ 的残差")
    _hamiltonian_args(p)
    p.add_argument("--eta", default=None, help="度规 JSON")
    p.add_argument("--sign", choices=["pseudo", "anti"], default=None)

    p = sub.add_parser("involution", parents=[parent], help="𝒞 算符与对合条件")
    _hamiltonian_args(p)
    _metric_args(p)
    p.add_argument("--phi-p", type=float, default=0.0, help="宇称角 φp")
    p.add_argument("--b", default=None, help="与 H 对易的矩阵 B，默认 1₂")
    p.add_argument("--scan-points", type=int, default=180, help="宇称角扫描点数")

    p = sub.add_parser("catalog", parents=[parent], help="列出目录或计算闭式度规")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--case", choices=["case1", "case2", "case3", "case4"], default=None)
    p.add_argument("--beta", type=float, default=None, help="znojil-wdw 的 β")
    _metric_args(p)

    p = sub.add_parser("sweep", parents=[parent], help="参数网格扫描，输出CSV")
    p.add_argument("entry")
    p.add_argument("--grid", action="append", default=[], metavar="NAME=START:STOP:NUM")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--observables", default=None, help="逗号分隔的可观测量")
    p.add_argument("--max-points", type=int, default=None)
    _metric_args(p)

    p = sub.add_parser("dynamics", parents=[parent], help="期望值 ⟨ψ(t)|ηB|ψ(t)⟩ 的守恒检查")
    _hamiltonian_args(p)
    _metric_args(p)
    p.add_argument("--eta", default=None, help="度规 JSON，默认由 H 构造")
    p.add_argument("--b", default=None, help="矩阵 B，默认 1₂")
    p.add_argument("--psi0", nargs=2, default=None, metavar=("PSI1", "PSI2"))
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("lee-wick", parents=[parent], help="Lee–Wick 4×4 系统")
    p.add_argument("--omega", default="1,-0.5", help="复频率 Ω，re,im")
    p.add_argument("--variant", choices=["anticommuting", "commuting"], default="anticommuting")

    return parser
