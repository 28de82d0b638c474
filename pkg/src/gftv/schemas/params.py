"""定理参数、λ 区间与边界采样计划的 Pydantic 数据模型。"""

from __future__ import annotations

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Theorem(str, Enum):
    """五个可验证的蕴含式；T23A/T23B 为同一定理的两个部分。"""

    T21 = "t21"
    T22 = "t22"
    T23A = "t23a"
    T23B = "t23b"
    T24 = "t24"


class TheoremParams(BaseModel):
    """(p, n, α, β, γ, λ) 与所属定理。取值区间由 criteria.check_params 校验。"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    theorem: Theorem
    p: int = Field(1, ge=1, description="叶数 p")
    n: int = Field(1, ge=1, description="缺项阶 n")
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    lambda_: float | None = Field(None, alias="lambda", description="T24 的 λ")

    def label(self) -> str:
        """规范化参数标签，用于排序与表格输出。"""
        parts = [self.theorem.value, f"p={self.p}", f"n={self.n}"]
        if self.theorem in (Theorem.T21, Theorem.T22, Theorem.T23A, Theorem.T23B):
            parts.append(f"alpha={self.alpha:g}")
        if self.theorem in (Theorem.T23A, Theorem.T23B):
            parts.append(f"beta={self.beta:g}")
            parts.append(f"gamma={self.gamma:g}")
        if self.theorem is Theorem.T24:
            parts.append(f"lambda={self.lambda_:g}" if self.lambda_ is not None else "lambda=-")
        return " ".join(parts)


class LambdaRange(BaseModel):
    """T24 的 λ 允许区间 (λ1, λ2)。λ2 为 None 表示无上界（UNBOUNDED）。"""

    model_config = ConfigDict(frozen=True)

    lambda1: float
    lambda2: float | None
    valid: bool
    diagnostic: str = ""

    @property
    def unbounded(self) -> bool:
        return self.valid and self.lambda2 is None

    def contains(self, lam: float) -> bool:
        """开区间 λ1 < λ < λ2 判定。"""
        if not self.valid:
            return False
        upper = math.inf if self.lambda2 is None else self.lambda2
        return self.lambda1 < lam < upper

    def interior(self, count: int) -> list[float]:
        """区间内部的 count 个代表点；无上界时取 λ1 的等比放大。"""
        if not self.valid or count <= 0:
            return []
        if self.lambda2 is None:
            return [self.lambda1 * (1.0 + 0.5 * (k + 1)) for k in range(count)]
        width = self.lambda2 - self.lambda1
        return [self.lambda1 + width * (k + 1) / (count + 1) for k in range(count)]


def check_radii(v: tuple[float, ...]) -> tuple[float, ...]:
    """采样半径非空、升序且均在 (0, 1) 内。"""
    if not v:
        raise ValueError("radii must not be empty")
    if any(not 0.0 < r < 1.0 for r in v):
        raise ValueError("every radius must lie in (0, 1)")
    if any(b <= a for a, b in zip(v, v[1:])):
        raise ValueError("radii must be strictly ascending")
    return v


class GridSpec(BaseModel):
    """边界采样计划：半径（升序，均在 (0,1) 内）、角向采样数与容差。"""

    model_config = ConfigDict(frozen=True)

    radii: tuple[float, ...] = (0.9, 0.99, 0.999)
    angular_count: int = 4096
    tol: float = 1e-9

    @field_validator("radii")
    @classmethod
    def validate_radii(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        return check_radii(v)

    @field_validator("angular_count")
    @classmethod
    def validate_angular_count(cls, v: int) -> int:
        if v < 16:
            raise ValueError("angular_count must be >= 16")
        return v

    @field_validator("tol")
    @classmethod
    def validate_tol(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tol must be > 0")
        return v

    @property
    def outer_radius(self) -> float:
        return self.radii[-1]

    def refined(self, factor: int = 2) -> GridSpec:
        """角向采样数乘以 factor 的同半径计划。"""
        return self.model_copy(update={"angular_count": self.angular_count * factor})
