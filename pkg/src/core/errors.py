"""
异常定义

所有领域错误都派生自 PseudoMetricError，携带命令行退出码和可序列化的诊断信息。
退出码约定：2 - 领域错误（物理/数学前提不满足），3 - 输入/解析/IO 错误。
"""


class PseudoMetricError(Exception):
    """
    领域错误基类

    属性:
        exit_code: 命令行退出码
        details: 附加诊断信息字典，会原样写入错误JSON
    """

    exit_code = 2

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        """
        转换为单行错误JSON使用的字典

        Returns:
            dict: 包含 error、message 以及所有诊断字段
        """
        payload = {"error": type(self).__name__, "message": self.message}
        payload.update(self.details)
        return payload


class SingularMatrix(PseudoMetricError):
    """矩阵行列式低于阈值，无法求逆"""


class NotClassifiable(PseudoMetricError):
    """哈密顿量既不是伪厄米也不是反伪厄米"""


class CaseMismatch(PseudoMetricError):
    """请求的 Case 不被分类结果允许"""


class ExceptionalPoint(PseudoMetricError):
    """tr[H]^2 = 4 det[H]，本征值简并，不构造度规"""


class DegenerateFrame(PseudoMetricError):
    """本征基公式的分母 (E1-E2)/2·(1+n3) 在两个分支上都为零"""


class DegenerateNormalizationRatio(PseudoMetricError):
    """复相位逆度规公式中的比值分母为零"""


class InvalidPerpVector(PseudoMetricError):
    """广义宇称算符的垂直单位向量不满足正交归一条件"""


class InvalidImaginaryPart(PseudoMetricError):
    """Znojil 哈密顿量要求 Im τ 为 π 的整数倍"""


class InvalidNormalization(PseudoMetricError):
    """归一化矩阵 N 不可逆"""


class InvalidParameter(PseudoMetricError):
    """参数超出允许范围（例如 |β| ≥ 1）"""


class NotFound(PseudoMetricError):
    """目录中不存在该条目或参数"""


class VerificationFailed(PseudoMetricError):
    """定义关系的残差超过上限"""


class InputError(PseudoMetricError):
    """输入解析失败或文件读写失败"""

    exit_code = 3
