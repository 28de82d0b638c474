"""A_{p,n} 成员、辅助函数 w 以及语料条目的 Pydantic 数据模型。"""

from __future__ import annotations

from collections.abc import Mapping
from functools import cached_property
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from gftv.core.errors import (
    GapViolation,
    IndexOutOfRange,
    InvariantViolation,
    MalformedFile,
    ParamOutOfRange,
)
from gftv.core.series import Series


def _coerce_coeffs(v: Any) -> dict[int, complex]:
    """接受 {k: 数值/复数/字符串} 或 [[k, re, im], ...]，统一为 {int: complex}。"""
    if isinstance(v, Mapping):
        items = v.items()
    else:
        items = ((row[0], complex(row[1], row[2] if len(row) > 2 else 0.0)) for row in v)
    out: dict[int, complex] = {}
    for k, c in items:
        out[int(k)] = complex(c)
    return dict(sorted(out.items()))


class FunctionSpec(BaseModel):
    """A_{p,n} 中的函数 f(z) = z^p + a_{p+n} z^{p+n} + ...，以截断幂级数表示。"""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=1, description="叶数")
    n: int = Field(..., ge=1, description="缺项阶")
    coeffs: dict[int, complex] = Field(..., description="指标 k ≥ p 到复系数 c_k 的映射")
    truncation_order: int = Field(64, description="截断阶 N ≥ p")
    exact: bool = Field(True, description="多项式（级数在 N 以内终止）时为 True")
    tail_coefficient: float = Field(
        0.0, ge=0.0, description="非精确截断时 |c_{N+1}| 的上界，用于尾项估计"
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def coerce_coeffs(cls, v: Any) -> dict[int, complex]:
        return _coerce_coeffs(v)

    @model_validator(mode="after")
    def check_class_membership(self) -> FunctionSpec:
        p, n, big_n = self.p, self.n, self.truncation_order
        if big_n < p:
            raise IndexOutOfRange(f"truncation order {big_n} below p={p}")
        for k, c in self.coeffs.items():
            if k < p or k > big_n:
                raise IndexOutOfRange(f"index {k} outside [{p}, {big_n}]")
            if p < k < p + n and c != 0:
                raise GapViolation(f"index {k} lies in the gap {p}<k<{p + n}")
        if self.coeffs.get(p) != 1:
            raise InvariantViolation(f"leading coefficient c_{p} must be exactly 1")
        return self

    @cached_property
    def series(self) -> Series:
        return Series.from_mapping(self.coeffs, self.truncation_order)

    def tail_bound(self, r: float) -> float:
        """截断尾项上界 |c_{N+1}| r^{N+1}/(1-r)；精确多项式为 0。"""
        if self.exact:
            return 0.0
        return self.tail_coefficient * r ** (self.truncation_order + 1) / (1.0 - r)


class TestFunction(BaseModel):
    """Jack 引理中的 w(z) = a_n z^n + ...，w(0)=0，最低非零指标 ≥ order。"""

    __test__ = False  # 避免被 pytest 当作测试类收集

    model_config = ConfigDict(frozen=True)

    order: int = Field(1, ge=1, description="w 在 0 处零点的阶 n")
    coeffs: dict[int, complex]
    truncation_order: int = 64
    exact: bool = True

    @field_validator("coeffs", mode="before")
    @classmethod
    def coerce_coeffs(cls, v: Any) -> dict[int, complex]:
        return {k: c for k, c in _coerce_coeffs(v).items() if c != 0}

    @model_validator(mode="after")
    def check_order(self) -> TestFunction:
        if not self.coeffs:
            raise InvariantViolation("test function is identically zero")
        lowest = min(self.coeffs)
        if lowest < max(1, self.order):
            raise IndexOutOfRange(f"lowest nonzero index {lowest} below order {self.order}")
        if max(self.coeffs) > self.truncation_order:
            raise IndexOutOfRange(
                f"index {max(self.coeffs)} exceeds truncation order {self.truncation_order}"
            )
        return self

    @cached_property
    def series(self) -> Series:
        return Series.from_mapping(self.coeffs, self.truncation_order)


def make_function(
    p: int, n: int, coeffs: Mapping[int, complex] | None = None, N: int = 64
) -> FunctionSpec:
    """构造并校验 A_{p,n} 成员，c_p 被强制置为 1。

    Raises:
        ParamOutOfRange: p、n < 1 或 N < p。
        GapViolation: 缺项 p<k<p+n 处有非零系数。
        IndexOutOfRange: 存在 k < p 或 k > N 的指标。
    """
    if p < 1 or n < 1:
        raise ParamOutOfRange(f"p and n must be >= 1, got p={p}, n={n}")
    if N < p:
        raise ParamOutOfRange(f"truncation order N={N} below p={p}")
    data = {int(k): complex(v) for k, v in (coeffs or {}).items()}
    for k in data:
        if k < p or k > N:
            raise IndexOutOfRange(f"index {k} outside [{p}, {N}]")
    data = {k: v for k, v in data.items() if v != 0}
    data[p] = 1 + 0j
    return FunctionSpec(p=p, n=n, coeffs=data, truncation_order=N, exact=True)


def make_test_function(order: int, coeffs: Mapping[int, complex], N: int = 64) -> TestFunction:
    return TestFunction(order=order, coeffs=dict(coeffs), truncation_order=N)


class Provenance(BaseModel):
    """语料条目来源：随机生成（种子 + 尺度）、命名经典函数或用户提供。"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["random", "named", "user"] = "user"
    seed: int | None = None
    index: int | None = None
    scale: float | None = None
    mode: Literal["decay", "aggressive"] | None = None
    name: str | None = None

    def to_token(self) -> str:
        """单个无空白的文本标记，例如 random:seed=7:index=3:scale=0.2:mode=decay。"""
        fields = [self.kind]
        for key in ("seed", "index", "scale", "mode", "name"):
            value = getattr(self, key)
            if value is not None:
                fields.append(f"{key}={value!r}" if key == "scale" else f"{key}={value}")
        return ":".join(fields)

    @classmethod
    def from_token(cls, token: str) -> Provenance:
        kind, *rest = token.split(":")
        data: dict[str, Any] = {"kind": kind}
        for part in rest:
            key, sep, value = part.partition("=")
            if not sep or key not in ("seed", "index", "scale", "mode", "name"):
                raise MalformedFile(f"bad provenance component {part!r}", field="provenance")
            data[key] = value
        return cls(**data)


class CorpusEntry(BaseModel):
    """语料文件中的一条记录；id 在文件内唯一。"""

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1, pattern=r"^\S+$")
    function: FunctionSpec
    provenance: Provenance = Provenance()
