"""语料文件与报告文件的读写。

语料文件为 UTF-8 文本，每行一条记录，字段以制表符分隔：
    id  p  n  N  exact  tail  provenance  k:re:im  k:re:im ...
以 # 开头的行为注释，空行忽略。浮点数一律以 17 位有效数字的科学计数法写出，
保证读写往返无损、重复保存字节一致。报告文件为 JSON lines，按规范顺序排列。
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from pathlib import Path

from pydantic import ValidationError

from gftv.core.errors import GftvError, InvariantViolation, MalformedFile
from gftv.observability.logging import get_logger
from gftv.schemas.functions import CorpusEntry, FunctionSpec, Provenance
from gftv.schemas.reports import VerificationReport

logger = get_logger(__name__)

HEADER = (
    "# gftv corpus v1",
    "# id\tp\tn\tN\texact\ttail\tprovenance\tk:re:im ...",
)
_FIXED_FIELDS = ("id", "p", "n", "N", "exact", "tail", "provenance")


def _fmt(x: float) -> str:
    return format(x, ".17e")


def format_entry(entry: CorpusEntry) -> str:
    f = entry.function
    fields = [
        entry.id,
        str(f.p),
        str(f.n),
        str(f.truncation_order),
        "true" if f.exact else "false",
        _fmt(f.tail_coefficient),
        entry.provenance.to_token(),
    ]
    fields.extend(f"{k}:{_fmt(c.real)}:{_fmt(c.imag)}" for k, c in sorted(f.coeffs.items()))
    return "\t".join(fields)


def save_corpus(entries: Iterable[CorpusEntry], path: str | Path) -> int:
    """写出语料文件，返回条目数。

    Raises:
        InvariantViolation: id 重复。
    """
    lines = list(HEADER)
    seen: set[str] = set()
    for entry in entries:
        if entry.id in seen:
            raise InvariantViolation(f"duplicate id {entry.id!r}")
        seen.add(entry.id)
        lines.append(format_entry(entry))
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info("corpus_saved", path=str(target), count=len(seen))
    return len(seen)


def _parse_int(text: str, line: int, field: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise MalformedFile(f"expected an integer, got {text!r}", line=line, field=field) from None


def _parse_float(text: str, line: int, field: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedFile(f"expected a number, got {text!r}", line=line, field=field) from None


def parse_entry(raw: str, line: int) -> CorpusEntry:
    """解析一行语料记录。

    Raises:
        MalformedFile: 字段缺失或无法解析。
        InvariantViolation: 函数未通过 A_{p,n} 校验（如缺项处系数非零）。
    """
    fields = raw.split("\t")
    if len(fields) < len(_FIXED_FIELDS):
        raise MalformedFile(
            f"expected at least {len(_FIXED_FIELDS)} tab-separated fields, got {len(fields)}",
            line=line,
            field=_FIXED_FIELDS[len(fields)] if len(fields) < len(_FIXED_FIELDS) else None,
        )
    entry_id = fields[0]
    if not entry_id or any(ch.isspace() for ch in entry_id):
        raise MalformedFile(f"bad id {entry_id!r}", line=line, field="id")
    p = _parse_int(fields[1], line, "p")
    n = _parse_int(fields[2], line, "n")
    big_n = _parse_int(fields[3], line, "N")
    if fields[4] not in ("true", "false"):
        raise MalformedFile(f"expected true or false, got {fields[4]!r}", line=line, field="exact")
    exact = fields[4] == "true"
    tail = _parse_float(fields[5], line, "tail")
    try:
        provenance = Provenance.from_token(fields[6])
    except MalformedFile:
        raise MalformedFile(f"bad provenance token {fields[6]!r}", line=line, field="provenance") from None
    except ValidationError as exc:
        raise MalformedFile(f"bad provenance: {exc.errors()[0]['msg']}", line=line, field="provenance") from None

    coeffs: dict[int, complex] = {}
    for j, token in enumerate(fields[7:], start=1):
        parts = token.split(":")
        field = f"coefficient {j}"
        if len(parts) != 3:
            raise MalformedFile(f"expected k:re:im, got {token!r}", line=line, field=field)
        k = _parse_int(parts[0], line, field)
        if k in coeffs:
            raise MalformedFile(f"index {k} given twice", line=line, field=field)
        coeffs[k] = complex(_parse_float(parts[1], line, field), _parse_float(parts[2], line, field))

    try:
        function = FunctionSpec(
            p=p, n=n, coeffs=coeffs, truncation_order=big_n, exact=exact, tail_coefficient=tail
        )
    except GftvError as exc:
        raise InvariantViolation(str(exc), line=line) from None
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(x) for x in first["loc"])
        raise InvariantViolation(f"{where}: {first['msg']}", line=line) from None
    return CorpusEntry(id=entry_id, function=function, provenance=provenance)


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """读取语料文件；空文件返回空列表。

    Raises:
        FileNotFoundError: 文件不存在。
        MalformedFile / InvariantViolation: 见 parse_entry；重复 id 亦为 InvariantViolation。
    """
    source = Path(path)
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        entry = parse_entry(raw, lineno)
        if entry.id in seen:
            raise InvariantViolation(f"duplicate id {entry.id!r}", line=lineno)
        seen.add(entry.id)
        entries.append(entry)
    logger.debug("corpus_loaded", path=str(source), count=len(entries))
    return entries


def format_reports(reports: Iterable[VerificationReport]) -> str:
    """规范顺序（function_id, theorem, 参数标签）的 JSON lines 文本。"""
    ordered = sorted(reports, key=lambda r: r.sort_key())
    return "".join(r.model_dump_json() + "\n" for r in ordered)


def save_reports(reports: Iterable[VerificationReport], path: str | Path) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_reports(reports), encoding="utf-8")
    logger.info("reports_saved", path=str(target))


def load_reports(path: str | Path) -> list[VerificationReport]:
    """读取 save_reports 写出的文件。

    Raises:
        MalformedFile: 某行不是合法的报告记录。
    """
    out: list[VerificationReport] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            # 标准库 json 接受 Infinity/-Infinity 常量
            out.append(VerificationReport.model_validate(json.loads(raw)))
        except (json.JSONDecodeError, ValidationError) as exc:
            raise MalformedFile(f"not a report record: {exc}", line=lineno) from None
    return out
