"""测试函数的确定性生成：随机多项式、Jack 引理用的 w、命名经典函数与语料批量生成。

负责：
- 按种子生成 A_{p,n} 中的随机多项式（decay / aggressive 两种系数规模）；
- 生成 w(0)=0 的随机辅助函数；
- 构造 identity、half-plane、monomial-pair(c) 等命名函数；
- 批量生成带来源信息的语料条目。
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from typing import Literal

import numpy as np

from gftv.core.errors import ParamOutOfRange, UnknownName
from gftv.observability.logging import get_logger
from gftv.schemas.functions import (
    CorpusEntry,
    FunctionSpec,
    Provenance,
    TestFunction,
    make_function,
    make_test_function,
)

logger = get_logger(__name__)

Mode = Literal["decay", "aggressive"]
Seed = int | Sequence[int]

_PAIR_PATTERN = re.compile(r"^(?:monomial-pair\((?P<a>[^()\s]+)\)|pair:(?P<b>\S+))$")


def _draw_in_disk(rng: np.random.Generator, bounds: np.ndarray) -> np.ndarray:
    """在半径为 bounds 的圆盘内均匀取复数（模长 bound·√U，辐角均匀）。"""
    u = rng.random(bounds.shape)
    phase = rng.random(bounds.shape) * 2.0 * np.pi
    return bounds * np.sqrt(u) * np.exp(1j * phase)


def random_polynomial(
    p: int,
    n: int,
    degree: int,
    scale: float,
    seed: Seed,
    mode: Mode = "decay",
    N: int | None = None,
) -> FunctionSpec:
    """z^p + Σ_{k=p+n}^{degree} c_k z^k。

    decay 模式下 |c_k| ≤ scale/k²，aggressive 模式下 |c_k| ≤ scale；
    相同参数与种子得到完全相同的系数。

    Raises:
        ParamOutOfRange: degree < p、scale ≤ 0 或未知模式。
    """
    if p < 1 or n < 1:
        raise ParamOutOfRange(f"p and n must be >= 1, got p={p}, n={n}")
    if degree < p:
        raise ParamOutOfRange(f"degree {degree} below p={p}")
    if not scale > 0:
        raise ParamOutOfRange(f"scale must be > 0, got {scale}")
    if mode not in ("decay", "aggressive"):
        raise ParamOutOfRange(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    ks = np.arange(p + n, degree + 1)
    bounds = scale / ks.astype(float) ** 2 if mode == "decay" else np.full(ks.shape, float(scale))
    values = _draw_in_disk(rng, bounds)
    coeffs = {int(k): complex(c) for k, c in zip(ks, values)}
    return make_function(p, n, coeffs, N=max(degree, 64) if N is None else N)


def random_test_function(
    order: int, degree: int, scale: float, seed: Seed, N: int = 64
) -> TestFunction:
    """w(z) = z^order·(a + Σ b_j z^j)，a 的模长在 [0.5, 1] 内，|b_j| ≤ scale/(j+1)²。"""
    if order < 1:
        raise ParamOutOfRange(f"order must be >= 1, got {order}")
    if degree < order:
        raise ParamOutOfRange(f"degree {degree} below order {order}")
    if scale < 0:
        raise ParamOutOfRange(f"scale must be >= 0, got {scale}")
    rng = np.random.default_rng(seed)
    lead = (0.5 + 0.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
    js = np.arange(1, degree - order + 1)
    tail = _draw_in_disk(rng, scale / (js.astype(float) + 1) ** 2)
    coeffs = {order: complex(lead)}
    coeffs.update({order + int(j): complex(b) for j, b in zip(js, tail)})
    return make_test_function(order, coeffs, N=max(N, degree))


def parse_pair_constant(name: str) -> complex | None:
    """monomial-pair(c) 或 pair:c 中的常数 c；名称不匹配时返回 None。"""
    match = _PAIR_PATTERN.match(name.strip())
    if match is None:
        return None
    raw = match.group("a") or match.group("b")
    try:
        return complex(raw)
    except ValueError as exc:
        raise UnknownName(f"bad monomial-pair constant {raw!r}") from exc


def classical_function(name: str, p: int, n: int, N: int = 64) -> FunctionSpec:
    """命名经典函数。

    - identity: z^p
    - half-plane（仅 p = n = 1）: z/(1-z) 截断到 z^N，非精确，尾项系数上界 1
    - monomial-pair(c) / pair:c: z^p + c·z^{p+n}

    Raises:
        UnknownName: 名称不在上述列表中。
        ParamOutOfRange: half-plane 且 p ≠ 1。
    """
    if name == "identity":
        return make_function(p, n, {}, N)
    if name == "half-plane":
        if p != 1 or n != 1:
            raise ParamOutOfRange(f"half-plane requires p=1 and n=1, got p={p}, n={n}")
        return FunctionSpec(
            p=1,
            n=1,
            coeffs={k: 1.0 for k in range(1, N + 1)},
            truncation_order=N,
            exact=False,
            tail_coefficient=1.0,
        )
    c = parse_pair_constant(name)
    if c is None:
        raise UnknownName(f"unknown classical function {name!r}")
    return make_function(p, n, {p + n: c}, N=max(N, p + n))


def canonical_name(name: str) -> str:
    """pair:c 统一写成 monomial-pair(c)。"""
    c = parse_pair_constant(name)
    if c is None:
        return name
    text = format(c.real, "g") if c.imag == 0 else str(c).strip("()")
    return f"monomial-pair({text})"


def named_entry(name: str, p: int, n: int, N: int = 64) -> CorpusEntry:
    canonical = canonical_name(name)
    return CorpusEntry(
        id=canonical,
        function=classical_function(canonical, p, n, N),
        provenance=Provenance(kind="named", name=canonical),
    )


def generate_corpus(
    count: int,
    p: int,
    n: int,
    degree: int,
    scale: float,
    seed: int,
    mode: Mode = "decay",
) -> list[CorpusEntry]:
    """count 条随机多项式，第 i 条使用种子 (seed, i)，id 为 rand-p{p}-n{n}-{i:05d}。"""
    if count < 0:
        raise ParamOutOfRange(f"count must be >= 0, got {count}")
    if seed < 0:
        raise ParamOutOfRange(f"seed must be >= 0, got {seed}")
    entries = [
        CorpusEntry(
            id=f"rand-p{p}-n{n}-{i:05d}",
            function=random_polynomial(p, n, degree, scale, (seed, i), mode),
            provenance=Provenance(kind="random", seed=seed, index=i, scale=scale, mode=mode),
        )
        for i in range(count)
    ]
    logger.info(
        "corpus_generated", count=count, p=p, n=n, degree=degree, scale=scale, seed=seed, mode=mode
    )
    return entries
