"""
JSON/CSV 线格式

复数编码为 [re, im]，矩阵编码为复数的嵌套数组；CSV 浮点数使用 17 位有效数字和 '.' 小数点。
"""

import csv
import io
import json
import math
from enum import Enum

import numpy as np

from src.core.errors import InputError


class MatrixCodec:
    """
    矩阵与复数的编解码工具类，所有方法均为静态方法
    """

    @staticmethod
    def encode(obj):
        """把结果对象递归转换为可 JSON 序列化的结构"""
        if hasattr(obj, "to_dict"):
            return MatrixCodec.encode(obj.to_dict())
        if isinstance(obj, dict):
            return {str(k): MatrixCodec.encode(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [MatrixCodec.encode(v) for v in obj]
        if isinstance(obj, np.ndarray):
            return MatrixCodec.encode(obj.tolist())
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, (bool, np.bool_)):
            return bool(obj)
        if isinstance(obj, (complex, np.complexfloating)):
            return [float(obj.real), float(obj.imag)]
        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, (float, np.floating)):
            return float(obj)
        return obj

    @staticmethod
    def dumps(obj):
        """单行确定性 JSON"""
        return json.dumps(MatrixCodec.encode(obj), ensure_ascii=False, separators=(",", ":"))

    @staticmethod
    def decode_complex(value, field="value"):
        """
        解析复数：[re, im]、实数或 're,im' 字符串

        Raises:
            InputError: 格式错误或非有限值，错误信息带有字段名
        """
        try:
            if isinstance(value, str):
                parts = value.split(",")
                if len(parts) == 1:
                    z = complex(float(parts[0]), 0.0)
                elif len(parts) == 2:
                    z = complex(float(parts[0]), float(parts[1]))
                else:
                    raise ValueError(value)
            elif isinstance(value, (list, tuple)):
                if len(value) != 2 or isinstance(value[0], (list, tuple)):
                    raise ValueError(value)
                z = complex(float(value[0]), float(value[1]))
            elif isinstance(value, bool):
                raise ValueError(value)
            else:
                z = complex(float(value), 0.0)
        except (TypeError, ValueError):
            raise InputError(f"{field} 不是合法的复数: {value!r}", field=field)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise InputError(f"{field} 含有非有限值", field=field)
        return z

    @staticmethod
    def decode_matrix(value, dim=None, field="h"):
        """
        解析 n×n 复矩阵（n = 2 或 4）

        Returns:
            numpy.ndarray: complex128 方阵
        """
        if not isinstance(value, (list, tuple)) or not value:
            raise InputError(f"{field} 必须是嵌套数组", field=field)
        n = len(value)
        allowed = (dim,) if dim else (2, 4)
        if n not in allowed:
            raise InputError(f"{field} 行数必须为 {allowed}: {n}", field=field)
        M = np.zeros((n, n), dtype=complex)
        for i, row in enumerate(value):
            if not isinstance(row, (list, tuple)) or len(row) != n:
                raise InputError(f"{field}[{i}] 必须包含 {n} 个元素", field=f"{field}[{i}]")
            for j, entry in enumerate(row):
                M[i, j] = MatrixCodec.decode_complex(entry, field=f"{field}[{i}][{j}]")
        return M

    @staticmethod
    def loads(text, field="input"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{field} 不是合法的JSON: {e.msg} (第{e.lineno}行第{e.colno}列)",
                             field=field)

    @staticmethod
    def format_float(x):
        """17 位有效数字，不依赖区域设置"""
        return format(float(x), ".17g")

    @staticmethod
    def to_csv(header, rows):
        """
        Args:
            header: 列名列表
            rows: 行序列，浮点数按 17 位有效数字输出

        Returns:
            str: CSV 文本（包括表头）
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([MatrixCodec._cell(v) for v in row])
        return buffer.getvalue()

    @staticmethod
    def _cell(value):
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (float, np.floating)):
            return MatrixCodec.format_float(value)
        if value is None:
            return ""
        return value
