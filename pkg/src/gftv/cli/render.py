"""表格与记录两种输出格式。数值统一以 12 位有效数字显示。"""

from __future__ import annotations

import math
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel


def fmt_num(x: Any) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, complex):
        return f"{fmt_num(x.real)}{'+' if x.imag >= 0 else '-'}{fmt_num(abs(x.imag))}j"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".12g")
    return str(x)


def render_table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    cells = [[fmt_num(v) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, v in enumerate(row):
            widths[i] = max(widths[i], len(v))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.ljust(widths[i]) for i, v in enumerate(row)).rstrip() for row in cells)
    return "\n".join(lines) + "\n"


def render_records(models: Iterable[BaseModel]) -> str:
    return "".join(m.model_dump_json() + "\n" for m in models)


def emit(text: str, output: str | None) -> None:
    """写到 --output 指定的文件，未指定时写标准输出。"""
    if output:
        target = Path(output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def progress(message: str) -> None:
    """进度信息写标准错误，不影响数据输出。"""
    print(message, file=sys.stderr, flush=True)


def render_reports(reports: Sequence[Any], fmt: str) -> str:
    """VerificationReport 列表的表格或 records 文本。"""
    if fmt == "records":
        return render_records(reports)
    return render_table(
        ["id", "params", "radius", "M", "hyp_margin", "concl_margin", "status", "notes"],
        (
            [
                r.function_id,
                r.params.label(),
                r.radius,
                r.samples,
                r.hyp_margin,
                r.concl_margin,
                r.status.value,
                ",".join(r.notes) or "-",
            ]
            for r in reports
        ),
    )
