"""命令行入口：解析参数、加载配置、初始化日志与 run_id、分发子命令并映射退出码。

退出码：0 成功；1 oracle/检查失败；2 发现 VIOLATION；64 用法或输入错误。
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from gftv import __version__
from gftv.cli.commands import register_all
from gftv.cli.dependencies import common_parent
from gftv.core.config import Settings, load_settings
from gftv.core.errors import (
    GapViolation,
    GftvError,
    IndexOutOfRange,
    InvariantViolation,
    MalformedFile,
    ParamOutOfRange,
    UnknownName,
    UsageError,
)
from gftv.observability.logging import configure_logging, get_logger, set_run_id
from gftv.observability.metrics import write_metrics

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64

# 用户输入导致的领域错误，按用法错误处理
_INPUT_ERRORS = (
    UsageError,
    ParamOutOfRange,
    MalformedFile,
    InvariantViolation,
    UnknownName,
    GapViolation,
    IndexOutOfRange,
)


class GftvArgumentParser(argparse.ArgumentParser):
    """用法错误抛出 UsageError 而不是直接退出进程。"""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = GftvArgumentParser(
        prog="gftv",
        description="多叶解析函数近凸/星形判据的数值验证工具。",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(
        dest="command", required=True, metavar="COMMAND", parser_class=GftvArgumentParser
    )
    register_all(subparsers, common_parent())
    return parser


def _fail(code: int, message: str) -> int:
    print(f"gftv: error: {message}", file=sys.stderr)
    return code


def _load(args: argparse.Namespace) -> Settings:
    return load_settings(
        args.config,
        log_level=args.log_level,
        metrics_file=args.metrics_file,
        tol=args.tol,
        angular_count=args.samples,
        grid_radii=tuple(args.radii) if args.radii else None,
    )


def run_cli(argv: Sequence[str] | None = None) -> int:
    """解析 argv 并执行子命令，返回退出码（不调用 sys.exit）。"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except SystemExit as exc:
        # --help / --version
        return int(exc.code or 0)

    try:
        settings = _load(args)
    except (ValidationError, ValueError, FileNotFoundError) as exc:
        return _fail(EXIT_USAGE, f"configuration: {exc}")

    set_run_id()
    configure_logging(settings.log_level, settings.log_dir)
    logger.info("command_started", command=args.command)
    try:
        code = args.handler(args, settings)
    except _INPUT_ERRORS as exc:
        logger.warning("command_rejected", command=args.command, error=type(exc).__name__, detail=str(exc))
        return _fail(EXIT_USAGE, str(exc))
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(x) for x in first["loc"]) or "input"
        return _fail(EXIT_USAGE, f"{where}: {first['msg']}")
    except FileNotFoundError as exc:
        return _fail(EXIT_USAGE, str(exc))
    except GftvError as exc:
        logger.error("command_failed", command=args.command, error=exc.code, detail=str(exc))
        return _fail(EXIT_CHECK_FAILED, str(exc))
    finally:
        if settings.metrics_file:
            write_metrics(settings.metrics_file)
    logger.info("command_finished", command=args.command, exit_code=code)
    return code


def main() -> None:
    sys.exit(run_cli())
