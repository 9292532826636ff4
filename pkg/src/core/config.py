import copy
import logging
from dataclasses import dataclass, asdict

from src.core.errors import InputError


@dataclass(frozen=True)
class Tolerances:
    """
    数值容差

    属性:
        eq_abs: 逐元素比较的绝对容差
        eq_rel: 逐元素比较的相对容差
        classify_scale: 实数性/不等式判定使用的尺度因子
    """

    eq_abs: float = 1e-10
    eq_rel: float = 1e-10
    classify_scale: float = 1e-9

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise InputError(f"容差 {name} 必须为正数: {value}", field=name)

    def threshold(self, magnitude):
        """
        尺度感知阈值 classify_scale · max(1, magnitude)
        """
        return self.classify_scale * max(1.0, float(magnitude))


class Config:
    """
    配置管理类

    保存数值容差、默认分支、扫描上限等运行参数。
    配置只存在于内存中：先载入默认值，再合并调用方（通常是命令行参数）提供的覆盖项。

    属性:
        logger: 日志记录器
        default_config: 默认配置字典
        current_config: 当前使用的配置字典
    """

    def __init__(self, overrides=None):
        """
        初始化配置管理器

        Args:
            overrides: 可选的嵌套字典，其值会覆盖默认配置
        """
        self.logger = logging.getLogger(__name__)
        self.default_config = {
            "tolerances": {                 # 数值容差
                "eq_abs": 1e-10,
                "eq_rel": 1e-10,
                "classify_scale": 1e-9,
            },
            "metric": {                     # 度规构造的默认选择
                "branch": "plus",           # 本征值 ± 分支
                "circle": "plus",           # 度规整体符号
                "n1": [1.0, 0.0],
                "n2": [1.0, 0.0],
                "phi": [0.0, 0.0],
            },
            "verify": {
                "residual_limit": 1e-9,     # 定义关系残差的通过上限
            },
            "sweep": {
                "max_points": 1000000,      # 扫描网格点数上限
            },
            "dynamics": {
                "t_max": 10.0,
                "samples": 100,
            },
        }
        self.current_config = copy.deepcopy(self.default_config)
        if overrides:
            self._merge_config(self.current_config, overrides)
            self.logger.debug(f"已合并配置覆盖项: {overrides}")

    def _merge_config(self, target, source):
        """
        递归合并配置字典

        Args:
            target: 目标字典，合并结果将存储在此
            source: 源字典，其值将合并到目标字典
        """
        for key, value in source.items():
            if key in target and isinstance(target[key], dict) and isinstance(value, dict):
                self._merge_config(target[key], value)
            else:
                target[key] = value

    def get(self, key, default=None):
        """
        获取配置项值，支持 'tolerances.eq_abs' 形式的点号键名

        Returns:
            配置项的值，如果不存在则返回默认值
        """
        value = self.current_config
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key, value):
        """
        设置配置项值，None 表示保留原值
        """
        if value is None:
            return
        keys = key.split('.')
        target = self.current_config
        for k in keys[:-1]:
            target = target.setdefault(k, {})
        target[keys[-1]] = value

    def tolerances(self):
        """
        Returns:
            Tolerances: 由当前配置构造的容差对象
        """
        section = self.get("tolerances", {})
        return Tolerances(
            eq_abs=float(section["eq_abs"]),
            eq_rel=float(section["eq_rel"]),
            classify_scale=float(section["classify_scale"]),
        )
