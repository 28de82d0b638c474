"""valence：f 在 |z| = r 上的卷绕数；与 p 不符或计数失败时退出码 1。"""

from __future__ import annotations

import argparse

from gftv.cli.dependencies import add_function_flags, resolve_entries
from gftv.cli.render import emit, render_records, render_table
from gftv.core.config import Settings
from gftv.core.errors import ParamOutOfRange, UnstableWinding, ZeroOnContour
from gftv.schemas.common import ErrorNote
from gftv.schemas.reports import ValenceResult
from gftv.services.disk_eval import winding_number


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "valence",
        parents=[parent],
        help="卷绕数（p 叶性）",
        description="由辐角原理计算 f 在圆 |z| = r 内的零点个数，应等于 p。",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--p", type=int, default=1, help="叶数 p ≥ 1")
    parser.add_argument("--n", type=int, default=1, help="缺项阶 n ≥ 1")
    parser.add_argument("--radius", type=float, default=None, help="圆半径（默认取最外层采样半径）")
    add_function_flags(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    grid = settings.default_grid()
    radius = args.radius if args.radius is not None else grid.outer_radius
    if not 0.0 < radius < 1.0:
        raise ParamOutOfRange(f"radius must lie in (0, 1), got {radius}")
    results: list[ValenceResult] = []
    for entry in resolve_entries(args, settings, args.p, args.n):
        f = entry.function
        try:
            count = winding_number(f, radius, grid.angular_count, grid.tol)
            results.append(
                ValenceResult(function_id=entry.id, p=f.p, radius=radius, samples=grid.angular_count, winding=count)
            )
        except (ZeroOnContour, UnstableWinding) as exc:
            results.append(
                ValenceResult(
                    function_id=entry.id,
                    p=f.p,
                    radius=radius,
                    samples=grid.angular_count,
                    error=ErrorNote.from_exception(exc),
                )
            )
    if args.format == "records":
        text = render_records(results)
    else:
        text = render_table(
            ["id", "p", "radius", "M", "winding", "ok", "error"],
            (
                [r.function_id, r.p, r.radius, r.samples, r.winding, r.ok, r.error.code if r.error else "-"]
                for r in results
            ),
        )
    emit(text, args.output)
    return 0 if all(r.ok for r in results) else 1
