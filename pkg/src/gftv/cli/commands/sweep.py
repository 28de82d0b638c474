"""sweep：参数笛卡尔积 × 语料的批量验证。

进度逐组合写到标准错误，最终输出按参数标签排序，保证重复运行字节一致。
"""

from __future__ import annotations

import argparse
import itertools

from gftv.cli.dependencies import add_param_flags, build_params
from gftv.cli.render import emit, progress, render_table
from gftv.core.config import Settings
from gftv.core.errors import ParamOutOfRange
from gftv.db.clients.corpus_file import format_reports, load_corpus
from gftv.observability.logging import get_logger
from gftv.schemas.functions import CorpusEntry
from gftv.schemas.params import Theorem, TheoremParams
from gftv.schemas.reports import CorpusReport, Status
from gftv.services import criteria
from gftv.services.corpus_service import generate_corpus
from gftv.services.verifier import run_corpus

logger = get_logger(__name__)

# 未给出 --lambda 时每个 (p, n) 在 λ 区间内部取的点数
LAMBDA_POINTS = 3


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "sweep",
        parents=[parent],
        help="参数网格 × 语料批量验证",
        description="对参数笛卡尔积中的每个有效组合在语料上运行验证并汇总状态计数。",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_param_flags(parser, lists=True)
    parser.add_argument("--corpus", default=None, help="语料文件；未给出时按下列参数随机生成")
    parser.add_argument("--count", type=int, default=100, help="每个 (p, n) 生成的随机多项式个数")
    parser.add_argument("--seed", type=int, default=0, help="随机种子")
    parser.add_argument("--scale", type=float, default=0.2, help="系数尺度")
    parser.add_argument("--degree", type=int, default=None, help="多项式次数（默认 p + n + 2）")
    parser.add_argument("--mode", choices=["decay", "aggressive"], default="decay", help="系数规模模式")
    parser.set_defaults(handler=run)


def _combinations(args: argparse.Namespace) -> list[TheoremParams]:
    out: list[TheoremParams] = []
    for theorem, p, n in itertools.product(args.theorem, args.p, args.n):
        if theorem is Theorem.T24:
            if args.lambda_ is not None:
                lambdas = list(args.lambda_)
            else:
                rng = criteria.lambda_range(p, n)
                if not rng.valid:
                    progress(f"skipped t24 p={p} n={n}: {rng.diagnostic}")
                    continue
                lambdas = rng.interior(LAMBDA_POINTS)
            out.extend(build_params(theorem, p, n, 0.0, 1.0, 1.0, lam) for lam in lambdas)
        elif theorem in (Theorem.T23A, Theorem.T23B):
            out.extend(
                build_params(theorem, p, n, a, b, g, None)
                for a, b, g in itertools.product(args.alpha, args.beta, args.gamma)
            )
        else:
            out.extend(build_params(theorem, p, n, a, 1.0, 1.0, None) for a in args.alpha)

    valid: list[TheoremParams] = []
    for params in out:
        try:
            criteria.check_params(params)
        except ParamOutOfRange as exc:
            progress(f"skipped {params.label()}: {exc}")
            logger.warning("sweep_params_skipped", params=params.label(), reason=str(exc))
            continue
        valid.append(params)
    return valid


def run(args: argparse.Namespace, settings: Settings) -> int:
    combos = _combinations(args)
    if not combos:
        raise ParamOutOfRange("no valid parameter combination")
    loaded = load_corpus(args.corpus) if args.corpus else None
    corpora: dict[tuple[int, int], list[CorpusEntry]] = {}

    def corpus_for(p: int, n: int) -> list[CorpusEntry]:
        if (p, n) not in corpora:
            if loaded is not None:
                corpora[(p, n)] = [e for e in loaded if e.function.p == p and e.function.n >= n]
            else:
                degree = args.degree if args.degree is not None else p + n + 2
                corpora[(p, n)] = generate_corpus(
                    args.count, p, n, degree, args.scale, args.seed, args.mode
                )
        return corpora[(p, n)]

    grid = settings.default_grid()
    results: list[CorpusReport] = []
    for i, params in enumerate(combos, start=1):
        entries = corpus_for(params.p, params.n)
        if not entries:
            progress(f"[{i}/{len(combos)}] {params.label()}: no matching corpus entries")
            continue
        result = run_corpus(entries, params, grid, settings.tol, settings.resolve_threads())
        results.append(result)
        counts = " ".join(f"{k}={v}" for k, v in result.counts.items())
        progress(f"[{i}/{len(combos)}] {params.label()}: {counts}")

    results.sort(key=lambda r: r.params.label())
    if args.format == "records":
        text = format_reports(r for result in results for r in result.reports)
    else:
        text = render_table(
            ["params", "entries", *[s.value for s in Status]],
            (
                [r.params.label(), len(r.reports), *[r.counts[s.value] for s in Status]]
                for r in results
            ),
        )
    emit(text, args.output)
    return 2 if any(r.violations for r in results) else 0
