import logging
import sys

from src.cli.commands import CommandRunner
from src.cli.parser import build_parser
from src.core.config import Config
from src.core.errors import InputError, PseudoMetricError
from src.utils.json_codec import MatrixCodec
from src.utils.log_utils import LogUtils


def setup_logging(verbosity=0, log_file=None):
    """设置日志系统，日志只写到标准错误和可选的日志文件"""
    LogUtils.setup_logging(log_file=log_file, console=True, level=LogUtils.level_for(verbosity))


def build_config(args):
    """
    由命令行参数构造配置

    Args:
        args: argparse.Namespace

    Returns:
        Config
    """
    config = Config()
    config.set("tolerances.eq_abs", getattr(args, "tol_abs", None))
    config.set("tolerances.eq_rel", getattr(args, "tol_rel", None))
    config.set("tolerances.classify_scale", getattr(args, "classify_scale", None))
    return config


def _report(error):
    sys.stderr.write(MatrixCodec.dumps(error.to_dict()) + "\n")
    sys.stderr.flush()
    return error.exit_code


def main(argv=None):
    """
    程序入口

    Returns:
        int: 退出码，0 - 成功，2 - 领域错误，3 - 输入/IO错误
    """
    try:
        args = build_parser().parse_args(argv)
    except InputError as e:
        return _report(e)

    setup_logging(args.verbose, args.log_file)
    logger = logging.getLogger(__name__)

    try:
        return CommandRunner(build_config(args)).run(args)
    except PseudoMetricError as e:
        logger.info(f"命令失败: {e.message}")
        return _report(e)
    except Exception as e:
        logger.exception("未预期的错误")
        sys.stderr.write(MatrixCodec.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
