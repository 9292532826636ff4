import logging
import sys
from pathlib import Path


class LogUtils:
    """日志工具类，提供日志相关的功能"""

    FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    @staticmethod
    def setup_logging(log_file=None, console=True, level=logging.WARNING):
        """
        设置日志系统

        标准输出只承载 JSON/CSV 结果，控制台日志一律写到标准错误。

        Args:
            log_file: 日志文件路径，如果为None则不输出到文件
            console: 是否输出到控制台（标准错误）
            level: 日志级别
        """
        root_logger = logging.getLogger()
        root_logger.setLevel(level)

        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        formatter = logging.Formatter(LogUtils.FORMAT)

        if console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            root_logger.addHandler(console_handler)

        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)

            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

    @staticmethod
    def level_for(verbosity):
        """
        把 -v 的次数映射为日志级别

        Args:
            verbosity: 0 - WARNING，1 - INFO，2 及以上 - DEBUG
        """
        if verbosity >= 2:
            return logging.DEBUG
        if verbosity == 1:
            return logging.INFO
        return logging.WARNING
