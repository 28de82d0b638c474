"""截断复幂级数内核：求导、按指标平移的无奇点求值与商求值。

所有形如 f'/z^{p-1}、f''/z^{p-2} 的商都通过指标平移直接求和，
从不对 z 做逐点除法，因此在 z=0 处没有可去奇点问题。
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.typing import ArrayLike

from gftv.core.errors import DenominatorVanishes, IndexOutOfRange, ShiftUnderflow

# |分母| 不超过该值即视为 f' 在采样点附近有零点
DENOMINATOR_EPS = 1e-12


class Series:
    """截断幂级数 Σ c_k z^k，c[k] 为 z^k 的复系数；实例不可变。"""

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: ArrayLike, truncation_order: int | None = None) -> None:
        c = np.asarray(coeffs, dtype=np.complex128).ravel()
        nonzero = np.flatnonzero(c)
        # 去掉尾部零系数，求值时 Horner 长度即实际次数
        c = c[: nonzero[-1] + 1].copy() if nonzero.size else np.zeros(0, dtype=np.complex128)
        c.setflags(write=False)
        self._coeffs = c
        degree = len(c) - 1
        self._order = max(degree, 0) if truncation_order is None else truncation_order
        if degree > self._order:
            raise IndexOutOfRange(f"degree {degree} exceeds truncation order {self._order}")

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[int, complex], truncation_order: int | None = None
    ) -> Series:
        """由 {k: c_k} 构造；k 必须非负。"""
        if not mapping:
            return cls([], truncation_order)
        if min(mapping) < 0:
            raise IndexOutOfRange(f"negative index {min(mapping)}")
        c = np.zeros(max(mapping) + 1, dtype=np.complex128)
        for k, v in mapping.items():
            c[k] = v
        return cls(c, truncation_order)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def truncation_order(self) -> int:
        return self._order

    @property
    def degree(self) -> int:
        """最高非零指标，零级数为 -1。"""
        return len(self._coeffs) - 1

    @property
    def lowest_index(self) -> int | None:
        nonzero = np.flatnonzero(self._coeffs)
        return int(nonzero[0]) if nonzero.size else None

    def is_zero(self) -> bool:
        return self._coeffs.size == 0

    def as_mapping(self) -> dict[int, complex]:
        return {int(k): complex(self._coeffs[k]) for k in np.flatnonzero(self._coeffs)}

    def derivative(self) -> Series:
        if len(self._coeffs) <= 1:
            return Series([], max(self._order - 1, 0))
        k = np.arange(1, len(self._coeffs))
        return Series(self._coeffs[1:] * k, max(self._order - 1, 0))

    def times_z(self, power: int = 1) -> Series:
        """乘以 z^power（power ≥ 0）。"""
        if power < 0:
            raise IndexOutOfRange("times_z expects a non-negative power")
        shifted = np.concatenate([np.zeros(power, dtype=np.complex128), self._coeffs])
        return Series(shifted, self._order + power)

    def eval_shifted(self, shift: int, z: ArrayLike) -> Any:
        """求 Σ c_k z^{k-shift}；支持标量或数组 z。"""
        lowest = self.lowest_index
        z_arr = np.asarray(z, dtype=np.complex128)
        if lowest is None:
            out = np.zeros_like(z_arr)
            return complex(out) if out.ndim == 0 else out
        if lowest < shift:
            raise ShiftUnderflow(f"nonzero index {lowest} below shift {shift}")
        if shift >= 0:
            c = self._coeffs[shift:]
        else:
            c = np.concatenate([np.zeros(-shift, dtype=np.complex128), self._coeffs])
        out = npoly.polyval(z_arr, c)
        return complex(out) if np.ndim(out) == 0 else out

    def _combine(self, other: Series, sign: float) -> Series:
        size = max(len(self._coeffs), len(other._coeffs))
        c = np.zeros(size, dtype=np.complex128)
        c[: len(self._coeffs)] += self._coeffs
        c[: len(other._coeffs)] += sign * other._coeffs
        return Series(c, max(self._order, other._order))

    def __add__(self, other: Series) -> Series:
        if not isinstance(other, Series):
            return NotImplemented
        return self._combine(other, 1.0)

    def __sub__(self, other: Series) -> Series:
        if not isinstance(other, Series):
            return NotImplemented
        return self._combine(other, -1.0)

    def __mul__(self, scalar: complex) -> Series:
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return Series(self._coeffs * complex(scalar), self._order)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._order == other._order and np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self) -> int:
        return hash((self._order, self._coeffs.tobytes()))

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {v:.6g}" for k, v in self.as_mapping().items())
        return f"Series({{{terms}}}, N={self._order})"


def _as_series(obj: Any) -> Series:
    if isinstance(obj, Series):
        return obj
    series = getattr(obj, "series", None)
    if isinstance(series, Series):
        return series
    raise TypeError(f"expected a Series or a function model, got {type(obj).__name__}")


def differentiate(f: Any) -> Series:
    """逐项求导：指标 k 处 k·c_k 移到 k-1，截断阶减一。"""
    return _as_series(f).derivative()


def eval_shifted(s: Any, shift: int, z: ArrayLike) -> Any:
    """直接求和 Σ c_k z^{k-shift}，从不除以 z。

    Raises:
        ShiftUnderflow: 存在非零指标 k < shift。
    """
    return _as_series(s).eval_shifted(shift, z)


def quotient_eval(numer: Any, denom: Any, shift: int, z: ArrayLike) -> Any:
    """eval_shifted(numer) / eval_shifted(denom)，两者使用同一平移量。

    Raises:
        DenominatorVanishes: 任一采样点处 |分母| ≤ 1e-12。
    """
    d = np.asarray(eval_shifted(denom, shift, z))
    small = np.abs(d) <= DENOMINATOR_EPS
    if np.any(small):
        where = np.asarray(z, dtype=np.complex128)
        at = where if where.ndim == 0 else where[np.argmax(small)]
        raise DenominatorVanishes(f"|denominator| <= {DENOMINATOR_EPS:g} near z={complex(at):.6g}")
    q = np.asarray(eval_shifted(numer, shift, z)) / d
    return complex(q) if q.ndim == 0 else q
