"""蕴含式验证引擎。

负责：
- 在单个函数上比较假设与结论的边距，给出 BOTH_HOLD / VACUOUS / VIOLATION / INCONCLUSIVE；
- 在语料上并行批量验证并按语料顺序汇总；
- 放宽常数后的反例搜索（严格模式下不应找到见证）；
- Jack 引理的数值检查。

边距只在最外层半径上报告，内层半径用于极值原理交叉检查。
求值错误记录在报告中而不抛出。
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from gftv.core.config import get_settings
from gftv.core.errors import DegenerateMax, GftvError, ParamOutOfRange
from gftv.observability.logging import get_logger
from gftv.observability.metrics import (
    corpus_size,
    evaluation_errors_total,
    verifications_total,
    verify_seconds,
)
from gftv.schemas.common import ErrorNote
from gftv.schemas.functions import CorpusEntry, FunctionSpec, TestFunction
from gftv.schemas.params import GridSpec, Theorem, TheoremParams
from gftv.schemas.reports import CorpusReport, JackReport, Status, VerificationReport, Witness
from gftv.services import criteria
from gftv.services.corpus_service import random_polynomial
from gftv.services.disk_eval import (
    Evaluator,
    count_zeros,
    inf_re_on_circle,
    sup_mod_on_circle,
    sup_re_on_circle,
)
from gftv.services.subordination import disk_inequality_margin

logger = get_logger(__name__)

# 边距与 0 的距离不超过 DOWNGRADE_FACTOR·tol 的 VIOLATION 降级为 INCONCLUSIVE
DOWNGRADE_FACTOR = 10.0
# 反例复核使用的角向加密倍数
RECHECK_FACTOR = 4
# Jack 检查：每轮在粗网格最大点附近取 ±8 个子步，共 3 轮
JACK_REFINE_ROUNDS = 3
JACK_REFINE_STEPS = 8

# 依赖 1 + zf''/f' 的定理，需先确认 f'/z^{p-1} 在圆内无零点
_CONVEXITY_HYPOTHESES = (Theorem.T21, Theorem.T22, Theorem.T24)


def classify(hyp_margin: float | None, concl_margin: float | None, tol: float) -> Status:
    """按边距符号划分状态；任一边距缺失且假设未明确失败时为 INCONCLUSIVE。"""
    if hyp_margin is None or math.isnan(hyp_margin):
        return Status.INCONCLUSIVE
    if hyp_margin < -tol:
        return Status.VACUOUS
    if hyp_margin > tol and concl_margin is not None and not math.isnan(concl_margin):
        if concl_margin > tol:
            return Status.BOTH_HOLD
        if concl_margin < -tol:
            return Status.VIOLATION
    return Status.INCONCLUSIVE


def _extrema(reduce: Callable[[Evaluator, float, int], float], F: Evaluator, grid: GridSpec) -> list[float]:
    return [reduce(F, r, grid.angular_count) for r in grid.radii]


def _monotone(values: list[float], increasing: bool, tol: float) -> bool:
    """相邻半径的极值满足单调性（容许 DOWNGRADE_FACTOR·tol 的相对偏差）。"""
    for inner, outer in zip(values, values[1:]):
        slack = DOWNGRADE_FACTOR * tol * max(1.0, abs(inner), abs(outer))
        if increasing and outer < inner - slack:
            return False
        if not increasing and outer > inner + slack:
            return False
    return True


def _hypothesis_margin(
    params: TheoremParams, f: FunctionSpec, grid: GridSpec, tol: float, notes: list[str]
) -> tuple[float, bool]:
    bound = criteria.hypothesis_bound(params)
    if params.theorem in _CONVEXITY_HYPOTHESES:
        zeros = count_zeros(
            f.series.derivative(), f.p - 1, grid.outer_radius, grid.angular_count, tol
        )
        if zeros:
            # 1 + zf''/f' 在圆内有极点，假设在圆盘上不成立
            notes.append("derivative_zero_inside")
            return -math.inf, True
    H = criteria.hypothesis_evaluator(params, f)
    if criteria.HYPOTHESIS_SENSE[params.theorem] == ">":
        values = _extrema(inf_re_on_circle, H, grid)
        return values[-1] - bound, _monotone(values, increasing=False, tol=tol)
    values = _extrema(sup_re_on_circle, H, grid)
    return bound - values[-1], _monotone(values, increasing=True, tol=tol)


def _conclusion_margin(
    params: TheoremParams, f: FunctionSpec, grid: GridSpec, tol: float
) -> tuple[float, bool]:
    threshold = criteria.conclusion_threshold(params)
    G = criteria.conclusion_evaluator(params, f)
    if criteria.CONCLUSION_SENSE[params.theorem] == ">":
        values = _extrema(inf_re_on_circle, G, grid)
        return values[-1] - threshold, _monotone(values, increasing=False, tol=tol)
    if params.theorem is Theorem.T24:
        margin = disk_inequality_margin(f, float(params.lambda_), grid)
        values = _extrema(sup_mod_on_circle, G, grid)
        return margin, _monotone(values, increasing=True, tol=tol)
    values = _extrema(sup_mod_on_circle, G, grid)
    return threshold - values[-1], _monotone(values, increasing=True, tol=tol)


def _check_membership(f: FunctionSpec, params: TheoremParams) -> None:
    if f.p != params.p or f.n < params.n:
        raise ParamOutOfRange(
            f"function in A_{{{f.p},{f.n}}} does not belong to A_{{{params.p},{params.n}}}"
        )


def _record_error(exc: GftvError, notes: list[str], stage: str) -> ErrorNote:
    evaluation_errors_total.labels(error_type=exc.code).inc()
    notes.append(f"{stage}_error")
    return ErrorNote.from_exception(exc)


def verify_implication(
    f: FunctionSpec,
    params: TheoremParams,
    grid: GridSpec | None = None,
    tol: float | None = None,
    function_id: str = "-",
) -> VerificationReport:
    """在采样圆上比较假设与结论，返回带符号边距的报告。

    Raises:
        ParamOutOfRange: 参数不在定理允许区间内，或 f 不属于参数对应的函数类。
    """
    criteria.check_params(params)
    _check_membership(f, params)
    grid = grid or get_settings().default_grid()
    tol = grid.tol if tol is None else tol
    started = time.perf_counter()

    notes: list[str] = []
    if criteria.outside_stated_regime(params):
        notes.append("outside_stated_regime")
        logger.warning("outside_stated_regime", theorem=params.theorem.value, alpha=params.alpha)

    hyp_margin: float | None = None
    concl_margin: float | None = None
    hyp_principle = concl_principle = True
    error: ErrorNote | None = None
    try:
        hyp_margin, hyp_principle = _hypothesis_margin(params, f, grid, tol, notes)
    except GftvError as exc:
        error = _record_error(exc, notes, "hypothesis")
    try:
        concl_margin, concl_principle = _conclusion_margin(params, f, grid, tol)
    except GftvError as exc:
        conclusion_error = _record_error(exc, notes, "conclusion")
        error = error or conclusion_error

    status = classify(hyp_margin, concl_margin, tol)
    if status is Status.VIOLATION and (
        hyp_margin <= DOWNGRADE_FACTOR * tol or abs(concl_margin) <= DOWNGRADE_FACTOR * tol
    ):
        status = Status.INCONCLUSIVE
        notes.append("violation_downgraded")
        logger.warning(
            "violation_downgraded",
            function_id=function_id,
            theorem=params.theorem.value,
            hyp_margin=hyp_margin,
            concl_margin=concl_margin,
        )

    principle_ok = hyp_principle and concl_principle
    if not principle_ok:
        logger.warning("principle_mismatch", function_id=function_id, theorem=params.theorem.value)

    tail = f.tail_bound(grid.outer_radius)
    if tail > tol:
        notes.append("truncation_tail_exceeds_tol")

    elapsed = time.perf_counter() - started
    verifications_total.labels(theorem=params.theorem.value, status=status.value).inc()
    verify_seconds.labels(theorem=params.theorem.value).observe(elapsed)
    logger.debug(
        "verification_done",
        function_id=function_id,
        params=params.label(),
        status=status.value,
        hyp_margin=hyp_margin,
        concl_margin=concl_margin,
    )
    return VerificationReport(
        function_id=function_id,
        params=params,
        radius=grid.outer_radius,
        samples=grid.angular_count,
        tol=tol,
        hyp_margin=hyp_margin,
        concl_margin=concl_margin,
        status=status,
        tail_bound=tail,
        principle_ok=principle_ok,
        notes=notes,
        error=error,
    )


def run_corpus(
    corpus: Sequence[CorpusEntry],
    params: TheoremParams,
    grid: GridSpec | None = None,
    tol: float | None = None,
    threads: int | None = None,
) -> CorpusReport:
    """逐条验证语料并按语料顺序汇总；线程数缺省取配置（GFTV_THREADS，0 = CPU 数）。

    Raises:
        ParamOutOfRange: 语料为空、参数无效或某条目不属于参数对应的函数类（在任何计算之前）。
    """
    if not corpus:
        raise ParamOutOfRange("corpus is empty")
    criteria.check_params(params)
    for entry in corpus:
        _check_membership(entry.function, params)
    settings = get_settings()
    grid = grid or settings.default_grid()
    workers = threads or settings.resolve_threads()
    corpus_size.set(len(corpus))

    def work(entry: CorpusEntry) -> VerificationReport:
        return verify_implication(entry.function, params, grid, tol, entry.id)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(work, corpus))
    result = CorpusReport(params=params, reports=reports)
    logger.info("corpus_verified", params=params.label(), entries=len(corpus), **result.counts)
    return result


def _accepts(hyp_margin: float | None, delta: float, tol: float) -> bool:
    if hyp_margin is None:
        return False
    if delta == 0:
        return hyp_margin > tol
    return -delta < hyp_margin <= 0


def search_counterexample(
    params: TheoremParams,
    delta: float,
    seed: int,
    trials: int,
    grid: GridSpec | None = None,
    tol: float | None = None,
    scale: float = 0.5,
    degree: int | None = None,
    threads: int | None = None,
) -> Witness | None:
    """在 aggressive 模式随机多项式上搜索结论失败的函数。

    delta = 0 为严格模式：只接受假设成立（hyp_margin > tol）的试验；
    delta > 0 时接受 hyp_margin ∈ (-delta, 0] 的试验，即常数放宽 delta 后满足假设。
    返回最小试验序号的见证，且已在 4 倍角向采样上复核；无见证时返回 None。

    Raises:
        ParamOutOfRange: delta < 0、trials < 0 或参数无效。
    """
    if not (math.isfinite(delta) and delta >= 0):
        raise ParamOutOfRange(f"delta must be >= 0, got {delta}")
    if trials < 0:
        raise ParamOutOfRange(f"trials must be >= 0, got {trials}")
    criteria.check_params(params)
    if trials == 0:
        return None
    settings = get_settings()
    grid = grid or settings.default_grid()
    tol = grid.tol if tol is None else tol
    degree = params.p + params.n + 2 if degree is None else degree
    screen = GridSpec(radii=(grid.outer_radius,), angular_count=grid.angular_count, tol=grid.tol)
    recheck_grid = grid.refined(RECHECK_FACTOR)

    def trial(i: int) -> Witness | None:
        f = random_polynomial(params.p, params.n, degree, scale, (seed, i), "aggressive")
        fid = f"trial-{i:06d}"
        report = verify_implication(f, params, screen, tol, fid)
        if not _accepts(report.hyp_margin, delta, tol):
            return None
        if report.concl_margin is None or report.concl_margin >= -tol:
            return None
        recheck = verify_implication(f, params, recheck_grid, tol, fid)
        if delta == 0:
            confirmed = recheck.status is Status.VIOLATION
        else:
            confirmed = (
                recheck.hyp_margin is not None
                and recheck.hyp_margin > -delta
                and recheck.concl_margin is not None
                and recheck.concl_margin < -tol
            )
        if not confirmed:
            logger.info("witness_rejected_on_recheck", trial=i, status=recheck.status.value)
            return None
        return Witness(trial_index=i, seed=seed, delta=delta, function=f, report=report, recheck=recheck)

    workers = threads or settings.resolve_threads()
    chunk = max(1, workers * 8)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, trials, chunk):
            # map 按提交顺序返回，块内第一个命中即为最小序号
            for found in pool.map(trial, range(start, min(start + chunk, trials))):
                if found is not None:
                    logger.info(
                        "witness_found",
                        params=params.label(),
                        delta=delta,
                        trial=found.trial_index,
                        concl_margin=found.recheck.concl_margin,
                    )
                    return found
    logger.info("search_exhausted", params=params.label(), delta=delta, trials=trials, seed=seed)
    return None


def jack_check(w: TestFunction, r0: float, M: int, tol: float = 1e-9) -> JackReport:
    """在 |z| = r0 上定位 |w| 的最大点 z0（粗网格 + 3 轮 ×8 局部加密），报告 m = z0 w'(z0)/w(z0)。

    Raises:
        ParamOutOfRange: r0 不在 (0, 1) 内或 M < 16。
        DegenerateMax: |w(z0)| ≤ tol 或 w'(z0) ≈ 0。
    """
    if not 0.0 < r0 < 1.0:
        raise ParamOutOfRange(f"r0 must lie in (0, 1), got {r0}")
    if M < 16:
        raise ParamOutOfRange(f"M must be >= 16, got {M}")
    series = w.series
    d1 = series.derivative()
    d2 = d1.derivative()

    def modulus(theta: np.ndarray) -> np.ndarray:
        return np.abs(series.eval_shifted(0, r0 * np.exp(1j * theta)))

    theta = 2.0 * np.pi * np.arange(M) / M
    best = float(theta[int(np.argmax(modulus(theta)))])
    step = 2.0 * np.pi / M
    offsets = np.arange(-JACK_REFINE_STEPS, JACK_REFINE_STEPS + 1) / JACK_REFINE_STEPS
    for _ in range(JACK_REFINE_ROUNDS):
        candidates = best + step * offsets
        best = float(candidates[int(np.argmax(modulus(candidates)))])
        step /= JACK_REFINE_STEPS

    z0 = r0 * complex(np.exp(1j * best))
    w0 = complex(series.eval_shifted(0, z0))
    if abs(w0) <= tol:
        raise DegenerateMax(f"|w(z0)| = {abs(w0):.3g} <= {tol:g}")
    w1 = complex(d1.eval_shifted(0, z0))
    if abs(w1) <= tol:
        raise DegenerateMax(f"|w'(z0)| = {abs(w1):.3g} <= {tol:g}")
    m = z0 * w1 / w0
    second = (z0 * complex(d2.eval_shifted(0, z0)) / w1).real + 1.0
    report = JackReport(
        r0=r0, z0=z0, order=w.order, m_estimate=m, residual=abs(m.imag), second_value=second
    )
    logger.debug("jack_checked", r0=r0, order=w.order, m_real=m.real, residual=report.residual)
    return report
