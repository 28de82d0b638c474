"""子命令共享的参数定义与解析：公共选项、定理参数、函数来源与采样计划。"""

from __future__ import annotations

import argparse
from collections.abc import Callable
from typing import Any

from gftv.core.config import Settings
from gftv.core.errors import UsageError
from gftv.db.clients.corpus_file import load_corpus
from gftv.schemas.functions import CorpusEntry, Provenance, make_function
from gftv.schemas.params import Theorem, TheoremParams
from gftv.services.corpus_service import named_entry

THEOREM_CHOICES = [t.value for t in Theorem]

Handler = Callable[[argparse.Namespace, Settings], int]


def parse_coeff(text: str) -> tuple[int, complex]:
    """K:RE[:IM] → (k, c)。"""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected K:RE[:IM], got {text!r}")
    try:
        k = int(parts[0])
        re_part = float(parts[1])
        im_part = float(parts[2]) if len(parts) == 3 else 0.0
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K:RE[:IM], got {text!r}") from None
    return k, complex(re_part, im_part)


def _list_of(cast: Callable[[str], Any]) -> Callable[[str], list[Any]]:
    def parse(text: str) -> list[Any]:
        try:
            values = [cast(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}") from None
        if not values:
            raise argparse.ArgumentTypeError("empty list")
        return values

    return parse


float_list = _list_of(float)
int_list = _list_of(int)


def theorem_list(text: str) -> list[Theorem]:
    try:
        return [Theorem(x.strip().lower()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected theorems from {','.join(THEOREM_CHOICES)}, got {text!r}"
        ) from None


def common_parent() -> argparse.ArgumentParser:
    """所有子命令共用的输出、配置与采样选项。"""
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("common options")
    group.add_argument(
        "--format",
        choices=["table", "records"],
        default="table",
        help="输出格式：table 为对齐表格，records 为每行一个 JSON 记录",
    )
    group.add_argument("--output", default=None, help="输出文件路径（默认标准输出）")
    group.add_argument("--config", default=None, help="YAML 配置文件，命令行参数优先")
    group.add_argument("--metrics-file", default=None, help="退出前写出 Prometheus 文本格式指标")
    group.add_argument(
        "--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="日志级别"
    )
    group.add_argument(
        "--radii",
        type=float_list,
        default=None,
        help="采样圆半径，逗号分隔、升序、均在 (0,1) 内（默认取配置 0.9,0.99,0.999）",
    )
    group.add_argument("--samples", type=int, default=None, help="每个圆上的角向采样数 M（默认 4096）")
    group.add_argument("--tol", type=float, default=None, help="判定容差（默认 1e-9）")
    return parent


def add_param_flags(parser: argparse.ArgumentParser, *, lists: bool = False, theorem_required: bool = True) -> None:
    """定理与参数选项；lists=True 时每个参数接受逗号分隔列表（sweep）。"""
    num = float_list if lists else float
    whole = int_list if lists else int
    if lists:
        parser.add_argument("--theorem", type=theorem_list, required=theorem_required, help="定理列表，如 t21,t24")
    else:
        parser.add_argument(
            "--theorem", type=str.lower, choices=THEOREM_CHOICES, required=theorem_required, help="定理"
        )
    parser.add_argument("--p", type=whole, default=[1] if lists else 1, help="叶数 p ≥ 1")
    parser.add_argument("--n", type=whole, default=[1] if lists else 1, help="缺项阶 n ≥ 1")
    parser.add_argument("--alpha", type=num, default=[0.0] if lists else 0.0, help="α（T21/T22/T23）")
    parser.add_argument("--beta", type=num, default=[1.0] if lists else 1.0, help="β ≥ 0（T23）")
    parser.add_argument("--gamma", type=num, default=[1.0] if lists else 1.0, help="γ ≥ 0（T23）")
    parser.add_argument(
        "--lambda", dest="lambda_", type=num, default=None, help="λ（T24，需位于 (λ1, λ2) 内）"
    )


def add_function_flags(parser: argparse.ArgumentParser) -> None:
    """函数来源：--coeff 逐项给出、--function 命名函数或 --corpus 文件。"""
    parser.add_argument(
        "--coeff",
        type=parse_coeff,
        action="append",
        default=None,
        metavar="K:RE[:IM]",
        help="系数 c_K（可重复）；c_p 固定为 1",
    )
    parser.add_argument(
        "--function",
        action="append",
        default=None,
        metavar="NAME",
        help="命名函数：identity、half-plane、pair:C（可重复）",
    )
    parser.add_argument("--corpus", default=None, help="语料文件路径")
    parser.add_argument("--id", default=None, help="只取语料中的该条目")


def build_params(
    theorem: Theorem | str,
    p: int,
    n: int,
    alpha: float,
    beta: float,
    gamma: float,
    lambda_: float | None,
) -> TheoremParams:
    return TheoremParams(
        theorem=Theorem(theorem), p=p, n=n, alpha=alpha, beta=beta, gamma=gamma, lambda_=lambda_
    )


def params_from_args(args: argparse.Namespace) -> TheoremParams:
    return build_params(args.theorem, args.p, args.n, args.alpha, args.beta, args.gamma, args.lambda_)


def resolve_entries(args: argparse.Namespace, settings: Settings, p: int, n: int) -> list[CorpusEntry]:
    """按 --coeff / --function / --corpus 组装待验证条目；均未给出时为 UsageError。"""
    entries: list[CorpusEntry] = []
    if args.coeff:
        coeffs = dict(args.coeff)
        N = max(settings.truncation_order, max(coeffs))
        entries.append(
            CorpusEntry(
                id="user",
                function=make_function(p, n, coeffs, N=N),
                provenance=Provenance(kind="user"),
            )
        )
    for name in args.function or []:
        entries.append(named_entry(name, p, n, settings.truncation_order))
    if args.corpus:
        loaded = load_corpus(args.corpus)
        if args.id is not None:
            loaded = [e for e in loaded if e.id == args.id]
            if not loaded:
                raise UsageError(f"argument --id: no entry {args.id!r} in {args.corpus}")
        entries.extend(loaded)
    elif args.id is not None:
        raise UsageError("argument --id: requires --corpus")
    if not entries:
        raise UsageError("one of --coeff, --function or --corpus is required")
    return entries
