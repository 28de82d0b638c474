"""corpus：生成随机语料（可附加命名函数）并写出语料文件。"""

from __future__ import annotations

import argparse
import sys

from gftv.cli.render import emit
from gftv.core.config import Settings
from gftv.db.clients.corpus_file import HEADER, format_entry, save_corpus
from gftv.services.corpus_service import generate_corpus, named_entry


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "corpus",
        parents=[parent],
        help="生成语料文件",
        description="按种子生成 A_{p,n} 中的随机多项式语料，格式见 doc/formats.md。",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--p", type=int, default=1, help="叶数 p ≥ 1")
    parser.add_argument("--n", type=int, default=1, help="缺项阶 n ≥ 1")
    parser.add_argument("--count", type=int, default=100, help="随机多项式个数")
    parser.add_argument("--degree", type=int, default=None, help="多项式次数（默认 p + n + 2）")
    parser.add_argument("--scale", type=float, default=0.2, help="系数尺度")
    parser.add_argument("--seed", type=int, default=0, help="随机种子")
    parser.add_argument("--mode", choices=["decay", "aggressive"], default="decay", help="系数规模模式")
    parser.add_argument(
        "--function", action="append", default=None, metavar="NAME", help="附加命名函数（可重复）"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    degree = args.degree if args.degree is not None else args.p + args.n + 2
    entries = [named_entry(name, args.p, args.n, settings.truncation_order) for name in args.function or []]
    entries.extend(generate_corpus(args.count, args.p, args.n, degree, args.scale, args.seed, args.mode))
    if args.output:
        count = save_corpus(entries, args.output)
        print(f"wrote {count} entries to {args.output}", file=sys.stderr)
    else:
        emit("\n".join([*HEADER, *(format_entry(e) for e in entries)]) + "\n", None)
    return 0
