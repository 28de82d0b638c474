"""边界圆采样：调和/对数次调和泛函的下确界、上确界估计与卷绕数计数。

假设 F 在闭圆盘上解析，由极小/极大值原理，圆盘上的极值在边界圆上取得，
因此只需在配置的圆 |z| = r 上采样。归约均按固定下标顺序进行，结果确定。
"""

from __future__ import annotations

import math
from collections.abc import Callable
from typing import Any

import numpy as np

from gftv.core.errors import UnstableWinding, ZeroOnContour
from gftv.core.series import Series, _as_series
from gftv.observability.logging import get_logger

logger = get_logger(__name__)

# 逐点复值求值器：接受 z 数组，返回同形复数组
Evaluator = Callable[[np.ndarray], np.ndarray]

# 单步相位增量阈值与局部加密计划（×4，最多 3 轮）
_MAX_PHASE_STEP = math.pi / 2
_REFINE_FACTOR = 4
_REFINE_ROUNDS = 3
# 累积相位偏离 2π 整数倍的容许量（以圈数计）
_WINDING_SLACK = 0.1
# 边界极值的局部加密：取最低的 4 个粗网格局部极值点，各做 3 轮 ×8 子步
_EXTREMUM_CANDIDATES = 4
_EXTREMUM_REFINE_STEPS = 8
_EXTREMUM_REFINE_ROUNDS = 3


def circle_points(r: float, M: int) -> np.ndarray:
    """|z| = r 上的 M 个等距采样点 r·e^{2πij/M}，j = 0..M-1。"""
    theta = 2.0 * np.pi * np.arange(M) / M
    return r * np.exp(1j * theta)


def _refined_min(objective: Callable[[np.ndarray], np.ndarray], M: int) -> float:
    """θ ↦ objective(θ) 在圆周上的最小值：粗网格之后，在最低的几个局部极小点附近加密。

    每轮在当前点两侧各取 _EXTREMUM_REFINE_STEPS 个子步，步长随之缩小，
    候选包含当前点，所以结果不高于粗网格最小值。
    """
    theta = 2.0 * np.pi * np.arange(M) / M
    values = np.asarray(objective(theta), dtype=np.float64)
    coarse = float(np.min(values))
    if not math.isfinite(coarse):
        return coarse
    local = np.flatnonzero((values <= np.roll(values, 1)) & (values <= np.roll(values, -1)))
    if local.size == 0:
        local = np.array([int(np.argmin(values))])
    starts = local[np.argsort(values[local], kind="stable")[:_EXTREMUM_CANDIDATES]]
    n = _EXTREMUM_REFINE_STEPS
    offsets = np.arange(-n, n + 1) / n
    best = coarse
    for j in starts:
        t = float(theta[j])
        step = 2.0 * np.pi / M
        for _ in range(_EXTREMUM_REFINE_ROUNDS):
            candidates = t + step * offsets
            sub = np.asarray(objective(candidates), dtype=np.float64)
            k = int(np.argmin(sub))
            t = float(candidates[k])
            best = min(best, float(sub[k]))
            step /= _EXTREMUM_REFINE_STEPS
    return best


def _on_circle(F: Evaluator, r: float) -> Callable[[np.ndarray], np.ndarray]:
    def evaluate(theta: np.ndarray) -> np.ndarray:
        return np.asarray(F(r * np.exp(1j * np.asarray(theta))), dtype=np.complex128)

    return evaluate


def inf_re_on_circle(F: Evaluator, r: float, M: int) -> float:
    """|z| = r 上 Re F 的最小值（M 点粗网格 + 局部加密）；对调和的 Re F 随 r 单调不增。"""
    values = _on_circle(F, r)
    return _refined_min(lambda t: values(t).real, M)


def sup_re_on_circle(F: Evaluator, r: float, M: int) -> float:
    """|z| = r 上 Re F 的最大值，用于 "<" 型假设。"""
    values = _on_circle(F, r)
    return -_refined_min(lambda t: -values(t).real, M)


def sup_mod_on_circle(F: Evaluator, r: float, M: int) -> float:
    """|z| = r 上 |F| 的最大值（最大模原理）。"""
    values = _on_circle(F, r)
    return -_refined_min(lambda t: -np.abs(values(t)), M)


def _segment_phase(
    evaluate: Evaluator, t0: float, t1: float, v0: complex, v1: complex, depth: int, tol: float
) -> float:
    step = float(np.angle(v1 / v0))
    if abs(step) <= _MAX_PHASE_STEP:
        return step
    if depth >= _REFINE_ROUNDS:
        raise UnstableWinding(
            f"phase step {step:.3f} rad persists after {_REFINE_ROUNDS} refinements near θ={t0:.6f}"
        )
    ts = np.linspace(t0, t1, _REFINE_FACTOR + 1)
    vs = np.asarray(evaluate(ts[1:-1]), dtype=np.complex128)
    if np.any(np.abs(vs) <= tol):
        raise ZeroOnContour(f"|f| <= {tol:g} near θ={t0:.6f}")
    vs = np.concatenate([[v0], vs, [v1]])
    return sum(
        _segment_phase(evaluate, ts[i], ts[i + 1], vs[i], vs[i + 1], depth + 1, tol)
        for i in range(_REFINE_FACTOR)
    )


def count_zeros(s: Any, shift: int, r: float, M: int, tol: float = 1e-9) -> int:
    """平移级数 Σ c_k z^{k-shift} 在 |z|<r 内的零点个数（计重数），由辐角原理给出。

    Raises:
        ZeroOnContour: 某采样点处 |值| ≤ tol。
        UnstableWinding: 加密后仍有超过 π/2 的相位跳变，或总相位偏离整数圈过多。
    """
    series: Series = _as_series(s)

    def evaluate(theta: np.ndarray) -> np.ndarray:
        return np.asarray(series.eval_shifted(shift, r * np.exp(1j * np.asarray(theta))))

    theta = 2.0 * np.pi * np.arange(M + 1) / M
    values = np.asarray(evaluate(theta[:-1]), dtype=np.complex128)
    if np.any(np.abs(values) <= tol):
        j = int(np.argmax(np.abs(values) <= tol))
        raise ZeroOnContour(f"|f| <= {tol:g} at sample {j} on |z|={r:g}")
    closed = np.concatenate([values, values[:1]])
    steps = np.angle(closed[1:] / closed[:-1])
    bad = np.flatnonzero(np.abs(steps) > _MAX_PHASE_STEP)
    if bad.size:
        logger.debug("winding_refine", radius=r, segments=int(bad.size))
        for j in bad:
            steps[j] = _segment_phase(
                evaluate, theta[j], theta[j + 1], closed[j], closed[j + 1], 0, tol
            )
    turns = float(np.sum(steps)) / (2.0 * np.pi)
    k = round(turns)
    if abs(turns - k) > _WINDING_SLACK:
        raise UnstableWinding(f"accumulated phase {turns:.4f} turns is not near an integer")
    return int(k)


def winding_number(f: Any, r: float, M: int, tol: float = 1e-9) -> int:
    """f 在 |z| = r 上的卷绕数，即 |z|<r 内零点个数（原点处 p 个加上其余零点）。"""
    return count_zeros(f, 0, r, M, tol)
