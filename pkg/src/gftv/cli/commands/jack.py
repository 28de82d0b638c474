"""jack：在 |w| 的最大点处检查 z0 w'(z0)/w(z0) 为不小于 n 的实数；检查失败退出码 1。"""

from __future__ import annotations

import argparse

from gftv.cli.dependencies import parse_coeff
from gftv.cli.render import emit, render_records, render_table
from gftv.core.config import Settings
from gftv.schemas.functions import TestFunction, make_test_function
from gftv.services.corpus_service import random_test_function
from gftv.services.verifier import jack_check


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "jack",
        parents=[parent],
        help="Jack 引理数值检查",
        description="给定 w（--coeff）或按种子随机生成 w，在 |z| = r0 上定位 |w| 的最大点并报告 m。",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--coeff", type=parse_coeff, action="append", default=None, metavar="K:RE[:IM]", help="w 的系数（可重复）"
    )
    parser.add_argument("--order", type=int, default=None, help="w 在 0 处零点的阶（默认取最低非零指标）")
    parser.add_argument("--r0", type=float, default=0.9, help="圆半径 r0 ∈ (0, 1)")
    parser.add_argument("--count", type=int, default=1, help="未给出 --coeff 时随机生成的 w 个数")
    parser.add_argument("--seed", type=int, default=0, help="随机种子")
    parser.add_argument("--degree", type=int, default=None, help="随机 w 的次数（默认 order + 4）")
    parser.add_argument("--scale", type=float, default=0.3, help="随机 w 的扰动尺度")
    parser.set_defaults(handler=run)


def _test_functions(args: argparse.Namespace) -> list[TestFunction]:
    if args.coeff:
        coeffs = dict(args.coeff)
        nonzero = [k for k, c in coeffs.items() if c != 0]
        order = args.order if args.order is not None else min(nonzero, default=1)
        return [make_test_function(order, coeffs, N=max(64, max(coeffs)))]
    order = args.order if args.order is not None else 1
    degree = args.degree if args.degree is not None else order + 4
    return [random_test_function(order, degree, args.scale, (args.seed, i)) for i in range(args.count)]


def run(args: argparse.Namespace, settings: Settings) -> int:
    reports = [jack_check(w, args.r0, settings.angular_count, settings.tol) for w in _test_functions(args)]
    if args.format == "records":
        text = render_records(reports)
    else:
        text = render_table(
            ["order", "r0", "z0", "m", "residual", "second", "ok"],
            ([r.order, r.r0, r.z0, r.m_estimate, r.residual, r.second_value, r.ok] for r in reports),
        )
    emit(text, args.output)
    return 0 if all(r.ok for r in reports) else 1
