"""bounds：打印定理常数、结论阈值与 λ 区间。"""

from __future__ import annotations

import argparse

from gftv.cli.dependencies import add_param_flags, build_params
from gftv.cli.render import emit, render_records, render_table
from gftv.core.config import Settings
from gftv.core.errors import ParamOutOfRange
from gftv.schemas.params import Theorem
from gftv.schemas.reports import BoundRecord
from gftv.services import criteria

# λ 未给出时在区间内部取的代表点个数
INTERIOR_POINTS = 5


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "bounds",
        parents=[parent],
        help="打印定理常数",
        description="打印给定参数下各定理的假设常数、结论阈值，T24 另给出 (λ1, λ2)。",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    add_param_flags(parser, theorem_required=False)
    parser.add_argument(
        "--classical", action="store_true", help="同时打印 p = n = 1 时经典单叶判据的常数"
    )
    parser.set_defaults(handler=run)


def _t24_records(args: argparse.Namespace) -> list[BoundRecord]:
    rng = criteria.lambda_range(args.p, args.n)
    label = f"t24 p={args.p} n={args.n}"
    if not rng.valid:
        raise ParamOutOfRange(rng.diagnostic)
    records = [
        BoundRecord(
            theorem="t24", params=label, lambda1=rng.lambda1, lambda2=rng.lambda2, note=rng.diagnostic
        )
    ]
    lambdas = [args.lambda_] if args.lambda_ is not None else rng.interior(INTERIOR_POINTS)
    for lam in lambdas:
        params = build_params(Theorem.T24, args.p, args.n, args.alpha, args.beta, args.gamma, lam)
        records.append(
            BoundRecord(
                theorem="t24",
                params=params.label(),
                bound=criteria.hypothesis_bound(params),
                threshold=criteria.conclusion_threshold(params),
            )
        )
    return records


def _records_for(theorem: Theorem, args: argparse.Namespace) -> list[BoundRecord]:
    if theorem is Theorem.T24:
        return _t24_records(args)
    params = build_params(theorem, args.p, args.n, args.alpha, args.beta, args.gamma, None)
    note = "outside_stated_regime" if criteria.outside_stated_regime(params) else ""
    return [
        BoundRecord(
            theorem=theorem.value,
            params=params.label(),
            bound=criteria.hypothesis_bound(params),
            threshold=criteria.conclusion_threshold(params),
            note=note,
        )
    ]


def run(args: argparse.Namespace, settings: Settings) -> int:
    records: list[BoundRecord] = []
    if args.theorem:
        # 显式指定的定理参数无效时直接报错（退出码 64）
        records.extend(_records_for(Theorem(args.theorem), args))
    else:
        for theorem in Theorem:
            try:
                records.extend(_records_for(theorem, args))
            except ParamOutOfRange as exc:
                records.append(BoundRecord(theorem=theorem.value, params="-", note=str(exc)))
    if args.classical:
        lam = args.lambda_
        for name, value in criteria.reduction_constants(args.alpha, args.beta, args.gamma, lam).items():
            records.append(BoundRecord(theorem=name, params="classical p=1 n=1", bound=value))

    if args.format == "records":
        text = render_records(records)
    else:
        text = render_table(
            ["theorem", "params", "bound", "threshold", "lambda1", "lambda2", "note"],
            (
                [r.theorem, r.params, r.bound, r.threshold, r.lambda1, r.lambda2, r.note]
                for r in records
            ),
        )
    emit(text, args.output)
    return 0
