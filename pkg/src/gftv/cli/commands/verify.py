"""verify：对一个（或语料中的若干）函数验证单个定理，发现 VIOLATION 时退出码 2。"""

from __future__ import annotations

import argparse

from gftv.cli.dependencies import add_function_flags, add_param_flags, params_from_args, resolve_entries
from gftv.cli.render import emit, render_reports
from gftv.core.config import Settings
from gftv.db.clients.corpus_file import format_reports
from gftv.services.verifier import run_corpus


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=[parent],
        help="验证单个定理的蕴含式",
        description="在配置的采样圆上比较假设与结论，输出带符号边距与状态。",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_param_flags(parser)
    add_function_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    params = params_from_args(args)
    entries = resolve_entries(args, settings, args.p, args.n)
    result = run_corpus(
        entries,
        params,
        grid=settings.default_grid(),
        tol=settings.tol,
        threads=settings.resolve_threads(),
    )
    if args.format == "records":
        text = format_reports(result.reports)
    else:
        text = render_reports(result.reports, "table")
    emit(text, args.output)
    return 2 if result.violations else 0

