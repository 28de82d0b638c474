"""search：放宽常数 delta 后的反例搜索。严格模式（delta = 0）找到见证时退出码 2。"""

from __future__ import annotations

import argparse

from gftv.cli.dependencies import add_param_flags, params_from_args
from gftv.cli.render import emit, render_records, render_table
from gftv.core.config import Settings
from gftv.services.verifier import search_counterexample


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "search",
        parents=[parent],
        help="反例搜索",
        description=(
            "在 aggressive 模式的随机多项式中寻找满足（放宽 delta 后的）假设但结论失败的函数。"
        ),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_param_flags(parser)
    parser.add_argument("--delta", type=float, default=0.0, help="常数放宽量，0 为严格模式")
    parser.add_argument("--seed", type=int, default=0, help="随机种子")
    parser.add_argument("--trials", type=int, default=1000, help="试验次数")
    parser.add_argument("--scale", type=float, default=0.5, help="系数模长上界")
    parser.add_argument("--degree", type=int, default=None, help="多项式次数（默认 p + n + 2）")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    params = params_from_args(args)
    witness = search_counterexample(
        params,
        delta=args.delta,
        seed=args.seed,
        trials=args.trials,
        grid=settings.default_grid(),
        tol=settings.tol,
        scale=args.scale,
        degree=args.degree,
        threads=settings.resolve_threads(),
    )
    if args.format == "records":
        text = render_records([witness]) if witness else ""
    elif witness is None:
        text = render_table(
            ["params", "delta", "seed", "trials", "witness"],
            [[params.label(), args.delta, args.seed, args.trials, "none"]],
        )
    else:
        coeffs = " ".join(
            f"{k}:{c.real:.12g}:{c.imag:.12g}" for k, c in sorted(witness.function.coeffs.items())
        )
        text = render_table(
            ["params", "delta", "trial", "hyp_margin", "concl_margin", "status", "coefficients"],
            [
                [
                    params.label(),
                    args.delta,
                    witness.trial_index,
                    witness.recheck.hyp_margin,
                    witness.recheck.concl_margin,
                    witness.recheck.status.value,
                    coeffs,
                ]
            ],
        )
    emit(text, args.output)
    return 2 if witness is not None and args.delta == 0 else 0
