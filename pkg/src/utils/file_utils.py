import logging
import sys
from pathlib import Path

from src.core.errors import InputError


class FileUtils:
    """
    文件工具类

    负责命令行输入（内联文本或文件路径）的读取和结果的写出。
    所有方法均为静态方法，读写失败统一转换为 InputError（退出码 3）。
    """

    @staticmethod
    def ensure_dir(dir_path):
        """
        确保目录存在，如果不存在则创建

        Args:
            dir_path (str or Path): 要创建的目录路径

        Raises:
            InputError: 创建失败
        """
        try:
            Path(dir_path).mkdir(parents=True, exist_ok=True)
        except OSError as e:
            logging.error(f"创建目录失败: {e}")
            raise InputError(f"创建目录失败: {e}", field="output")

    @staticmethod
    def read_text(source, field="input"):
        """
        读取输入文本

        以 '@' 开头或指向已存在文件的参数按文件读取，'-' 读取标准输入，其余视为内联文本。

        Args:
            source (str): 内联文本、文件路径、'@路径' 或 '-'

        Returns:
            str: 文本内容
        """
        if source == "-":
            return sys.stdin.read()
        path_text = source[1:] if source.startswith("@") else source
        path = Path(path_text)
        try:
            if source.startswith("@") or (len(path_text) < 4096 and path.is_file()):
                return path.read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"读取文件失败: {e}", field=field)
        return source

    @staticmethod
    def write_text(text, output=None):
        """
        写出结果文本

        Args:
            text (str): 结果
            output (str or Path): 输出文件，None 表示标准输出
        """
        if output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        path = Path(output)
        FileUtils.ensure_dir(path.parent)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            raise InputError(f"写入文件失败: {e}", field="output")
        logging.getLogger(__name__).info(f"结果已写入 {path}")
