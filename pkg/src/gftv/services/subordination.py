"""(1/p)·zf'/f 对 λ(1-z)/(λ-z) 的从属关系：圆盘不等式形式与边界包含形式。

目标函数把单位圆盘映成圆心、半径均为 λ/(λ+1) 的圆盘，
因此从属关系等价于 |(1/p) zf'/f - λ/(λ+1)| < λ/(λ+1)。
"""

from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, field_validator

from gftv.core.errors import ExtraZeros, ParamOutOfRange
from gftv.core.series import quotient_eval
from gftv.observability.logging import get_logger
from gftv.schemas.functions import FunctionSpec
from gftv.schemas.params import GridSpec
from gftv.services.disk_eval import circle_points, sup_mod_on_circle, winding_number

logger = get_logger(__name__)


class MobiusTarget(BaseModel):
    """z ↦ λ(1-z)/(λ-z)，λ > 1。"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: float = Field(..., alias="lambda")

    @field_validator("lambda_")
    @classmethod
    def validate_lambda(cls, v: float) -> float:
        if not (np.isfinite(v) and v > 1.0):
            raise ParamOutOfRange(f"target requires lambda > 1, got {v}")
        return v

    @property
    def center(self) -> float:
        return self.lambda_ / (self.lambda_ + 1.0)

    @property
    def radius(self) -> float:
        return self.lambda_ / (self.lambda_ + 1.0)

    def value(self, z: ArrayLike) -> Any:
        z_arr = np.asarray(z, dtype=np.complex128)
        out = self.lambda_ * (1.0 - z_arr) / (self.lambda_ - z_arr)
        return complex(out) if out.ndim == 0 else out

    def contains(self, q: ArrayLike, tol: float = 0.0) -> Any:
        """q 是否严格位于像圆盘内部（到圆心距离 < 半径 - tol）。"""
        inside = np.abs(np.asarray(q, dtype=np.complex128) - self.center) < self.radius - tol
        return bool(inside) if inside.ndim == 0 else inside


def starlike_quotient(f: FunctionSpec, z: ArrayLike) -> Any:
    """(1/p)·z f'(z)/f(z)，以 p 平移求值，z = 0 处取值 1。"""
    zd1 = f.series.derivative().times_z()
    return np.asarray(quotient_eval(zd1, f.series, f.p, z)) / f.p


def _require_p_zeros(f: FunctionSpec, grid: GridSpec) -> None:
    r = grid.outer_radius
    count = winding_number(f, r, grid.angular_count, grid.tol)
    if count != f.p:
        raise ExtraZeros(f"winding number {count} on |z|={r:g} differs from p={f.p}")


def disk_inequality_margin(f: FunctionSpec, lambda_: float, grid: GridSpec) -> float:
    """λ/(λ+1) - sup_{|z|=r} |(1/p) zf'/f - λ/(λ+1)|，r 为最外层半径；正值即从属成立。

    Raises:
        ExtraZeros: f 在最外层圆内除原点外还有零点。
        DenominatorVanishes: 采样点处 f ≈ 0。
    """
    target = MobiusTarget(lambda_=lambda_)
    _require_p_zeros(f, grid)
    distance = sup_mod_on_circle(
        lambda z: starlike_quotient(f, z) - target.center, grid.outer_radius, grid.angular_count
    )
    return target.radius - distance


def containment_subordination_check(f: FunctionSpec, lambda_: float, grid: GridSpec) -> bool:
    """每个配置圆上 (1/p) zf'/f 的采样值都严格落在目标圆盘内时为 True。"""
    target = MobiusTarget(lambda_=lambda_)
    _require_p_zeros(f, grid)
    for r in grid.radii:
        q = starlike_quotient(f, circle_points(r, grid.angular_count))
        if not np.all(target.contains(q, grid.tol)):
            logger.debug("containment_failed", radius=r, lambda_=lambda_)
            return False
    return True
