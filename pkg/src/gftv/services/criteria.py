"""定理常数的闭式计算、假设/结论泛函，以及复现证明中边界极值化的 θ 网格 oracle。

常数一律按文中公式逐字以双精度计算，不做代数化简；
p = n = 1 时与经典单叶常数的一致性由测试保证，而非代码分支。
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from gftv.core.errors import ParamOutOfRange, SingularTheta
from gftv.core.series import quotient_eval
from gftv.observability.logging import get_logger
from gftv.schemas.functions import FunctionSpec
from gftv.schemas.params import LambdaRange, Theorem, TheoremParams
from gftv.schemas.reports import OracleResult
from gftv.services.disk_eval import Evaluator
from gftv.services.subordination import MobiusTarget, starlike_quotient

logger = get_logger(__name__)

# 假设的不等号方向："> bound" 或 "< bound"
HYPOTHESIS_SENSE: dict[Theorem, str] = {
    Theorem.T21: ">",
    Theorem.T22: "<",
    Theorem.T23A: "<",
    Theorem.T23B: "<",
    Theorem.T24: "<",
}
# 结论的不等号方向，T24 的结论量为到目标圆盘圆心的距离
CONCLUSION_SENSE: dict[Theorem, str] = {
    Theorem.T21: ">",
    Theorem.T22: "<",
    Theorem.T23A: ">",
    Theorem.T23B: "<",
    Theorem.T24: "<",
}
# θ 表达式的极值方向：T21 取最大，其余取最小
_ORACLE_MAXIMIZE = {Theorem.T21}

# θ 表达式分母小于该值的样本视为极点并剔除
_POLE_EPS = 1e-12
_MIN_THETA_SAMPLES = 1000


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def _check_alpha_unit(alpha: float, theorem: str) -> None:
    if not (_finite(alpha) and 0.0 <= alpha < 1.0):
        raise ParamOutOfRange(f"{theorem} requires 0 <= alpha < 1, got {alpha}")


def _check_pn(p: int, n: int) -> None:
    if p < 1 or n < 1:
        raise ParamOutOfRange(f"p and n must be >= 1, got p={p}, n={n}")


def _check_beta_gamma(beta: float, gamma: float) -> None:
    if not (_finite(beta, gamma) and beta >= 0.0 and gamma >= 0.0 and beta + gamma > 0.0):
        raise ParamOutOfRange(f"requires beta, gamma >= 0 and beta + gamma > 0, got {beta}, {gamma}")


def bound_t21(p: int, n: int, alpha: float) -> float:
    """((2p-n) + α(2p+n)) / (2(α+1))。"""
    _check_pn(p, n)
    _check_alpha_unit(alpha, "t21")
    return ((2 * p - n) + alpha * (2 * p + n)) / (2 * (alpha + 1))


def bound_t22(p: int, n: int, alpha: float) -> float:
    """((p+n)α + (2p+n)) / (α+2)。"""
    _check_pn(p, n)
    if not (_finite(alpha) and alpha >= 0.0):
        raise ParamOutOfRange(f"t22 requires alpha >= 0, got {alpha}")
    return ((p + n) * alpha + (2 * p + n)) / (alpha + 2)


def bound_t23(kind: str, p: int, n: int, alpha: float, beta: float, gamma: float) -> float:
    """A: (pn)^γ (1-α)^{β+γ} / 2^{β+2γ}；B: (pn)^γ |1-α|^{β+γ}。"""
    _check_pn(p, n)
    _check_beta_gamma(beta, gamma)
    kind = kind.upper()
    if kind == "A":
        _check_alpha_unit(alpha, "t23a")
        return (p * n) ** gamma * (1 - alpha) ** (beta + gamma) / 2 ** (beta + 2 * gamma)
    if kind == "B":
        if not _finite(alpha) or alpha == 1.0:
            raise ParamOutOfRange(f"t23b requires alpha != 1, got {alpha}")
        return (p * n) ** gamma * abs(1 - alpha) ** (beta + gamma)
    raise ParamOutOfRange(f"unknown t23 kind {kind!r}")


def lambda_range(p: int, n: int) -> LambdaRange:
    """计算 λ1、λ2；判别式为负或分母非正时返回 valid=False 与诊断，而不抛出。"""
    _check_pn(p, n)
    numer = 2 * n + 4 * (2 * p - 1)
    disc1 = 16 * n + n**2 + 32 * p - 12 * n * p - 28 * p**2
    disc2 = 16 - 8 * n + n**2 - 48 * p + 4 * n * p + 36 * p**2

    def invalid(reason: str, lam1: float = math.nan) -> LambdaRange:
        return LambdaRange(lambda1=lam1, lambda2=None, valid=False, diagnostic=reason)

    if disc1 < 0:
        logger.debug("lambda_range_invalid", p=p, n=n, disc1=disc1)
        return invalid("lambda range invalid (negative discriminant)")
    den1 = 4 + n - 2 * p + math.sqrt(disc1)
    if den1 <= 0:
        logger.debug("lambda_range_invalid", p=p, n=n, den1=den1)
        return invalid("lambda range invalid (non-positive denominator)")
    lam1 = numer / den1
    if disc2 < 0:
        logger.debug("lambda_range_invalid", p=p, n=n, disc2=disc2)
        return invalid("lambda range invalid (negative discriminant)", lam1)
    den2 = -n + 2 * p + math.sqrt(disc2)
    if abs(den2) <= 1e-12 * max(1.0, abs(n) + abs(2 * p)):
        return LambdaRange(
            lambda1=lam1, lambda2=None, valid=True, diagnostic="lambda2 unbounded (zero denominator)"
        )
    if den2 < 0:
        logger.debug("lambda_range_invalid", p=p, n=n, den2=den2)
        return invalid("lambda range invalid (non-positive denominator)", lam1)
    lam2 = numer / den2
    if not lam1 < lam2:
        return LambdaRange(
            lambda1=lam1,
            lambda2=lam2,
            valid=False,
            diagnostic="lambda range invalid (empty interval)",
        )
    return LambdaRange(lambda1=lam1, lambda2=lam2, valid=True)


def bound_t24(p: int, n: int, lam: float) -> float:
    """分段常数，λ = (p+n)/p 归入第一段。

    Raises:
        ParamOutOfRange: λ 区间无效或 λ 不在 (λ1, λ2) 内。
    """
    rng = lambda_range(p, n)
    if not rng.valid:
        raise ParamOutOfRange(rng.diagnostic)
    if not (_finite(lam) and rng.contains(lam) and lam > 1.0):
        upper = "inf" if rng.lambda2 is None else f"{rng.lambda2:g}"
        raise ParamOutOfRange(f"lambda {lam} outside ({rng.lambda1:g}, {upper})")
    if lam <= (p + n) / p:
        return (2 * (1 - p) * lam**2 + (4 + n) * lam + (2 - 2 * p - n)) / (2 * (lam + 1))
    return (2 * (1 - p) * lam**2 + n * lam + (-2 + 2 * p + n)) / (2 * (lam - 1))


def reduction_constants(
    alpha: float = 0.0, beta: float = 1.0, gamma: float = 1.0, lam: float | None = None
) -> dict[str, float | None]:
    """p = n = 1 时经典单叶判据的常数，按其原始写法计算。"""
    out: dict[str, float | None] = {
        "t21": (1 + 3 * alpha) / (2 * (1 + alpha)),
        "t22": (3 + 2 * alpha) / (2 + alpha),
        "t23a": (1 - alpha) ** (beta + gamma) / 2 ** (beta + 2 * gamma),
        "t24": None,
    }
    if lam is not None:
        if 1 < lam <= 2:
            out["t24"] = (5 * lam - 1) / (2 * (lam + 1))
        elif 2 < lam < 3:
            out["t24"] = (lam + 1) / (2 * (lam - 1))
    return out


def check_params(params: TheoremParams) -> None:
    """按定理校验参数区间。T23B 允许 α ≠ 1，α 不在 [0,1) 时由调用方标注。"""
    p, n, alpha = params.p, params.n, params.alpha
    match params.theorem:
        case Theorem.T21:
            bound_t21(p, n, alpha)
        case Theorem.T22:
            bound_t22(p, n, alpha)
        case Theorem.T23A:
            bound_t23("A", p, n, alpha, params.beta, params.gamma)
        case Theorem.T23B:
            bound_t23("B", p, n, alpha, params.beta, params.gamma)
        case Theorem.T24:
            if params.lambda_ is None:
                raise ParamOutOfRange("t24 requires lambda")
            bound_t24(p, n, params.lambda_)


def outside_stated_regime(params: TheoremParams) -> bool:
    """T23B 的 α 超出 0 ≤ α < 1 时结果仅作参考。"""
    return params.theorem is Theorem.T23B and not 0.0 <= params.alpha < 1.0


def hypothesis_bound(params: TheoremParams) -> float:
    p, n, alpha = params.p, params.n, params.alpha
    match params.theorem:
        case Theorem.T21:
            return bound_t21(p, n, alpha)
        case Theorem.T22:
            return bound_t22(p, n, alpha)
        case Theorem.T23A:
            return bound_t23("A", p, n, alpha, params.beta, params.gamma)
        case Theorem.T23B:
            return bound_t23("B", p, n, alpha, params.beta, params.gamma)
        case Theorem.T24:
            if params.lambda_ is None:
                raise ParamOutOfRange("t24 requires lambda")
            return bound_t24(p, n, params.lambda_)
    raise ParamOutOfRange(f"unknown theorem {params.theorem}")


def conclusion_threshold(params: TheoremParams) -> float:
    """T21/T23A: (1+α)/2；T22: 1+α；T23B: |1-α|；T24: 目标圆盘半径 λ/(λ+1)。"""
    alpha = params.alpha
    match params.theorem:
        case Theorem.T21 | Theorem.T23A:
            return (1 + alpha) / 2
        case Theorem.T22:
            return 1 + alpha
        case Theorem.T23B:
            return abs(1 - alpha)
        case Theorem.T24:
            return MobiusTarget(lambda_=params.lambda_).radius
    raise ParamOutOfRange(f"unknown theorem {params.theorem}")


# ---------------------------------------------------------------------------
# 证明中的边界表达式与 θ 网格 oracle
# ---------------------------------------------------------------------------


def _theta_terms(params: TheoremParams, m: float, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """返回 (表达式值, 极点掩码)；极点处的值无意义。"""
    p, alpha = params.p, params.alpha
    c = np.cos(theta)
    singular = np.zeros(theta.shape, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        match params.theorem:
            case Theorem.T21:
                den = 1 + alpha**2 + 2 * alpha * c
                values = p + alpha * m * (alpha + c) / den - m / 2
            case Theorem.T22:
                a = 1 + alpha
                den = 1 + a**2 + 2 * a * c
                singular = np.abs(den) < _POLE_EPS
                values = p + m * a * (a + c) / den
            case Theorem.T23A:
                beta, gamma = params.beta, params.gamma
                den = 2 + 2 * c
                singular = np.abs(den) < _POLE_EPS
                values = (
                    p**gamma * m**gamma * (1 - alpha) ** (beta + gamma)
                    / np.abs(den) ** ((beta + 2 * gamma) / 2)
                )
            case Theorem.T23B:
                beta, gamma = params.beta, params.gamma
                values = np.full(theta.shape, p**gamma * m**gamma * abs(1 - alpha) ** (beta + gamma))
            case Theorem.T24:
                lam = float(params.lambda_)
                den = lam**2 + 1 - 2 * lam * c
                singular = np.abs(den) < _POLE_EPS
                values = (lam + 1) * (2 - p) / 2 + (lam**2 - 1) * ((p + m) - p * lam) / (2 * den)
    return np.asarray(values, dtype=float), singular


def theta_expression(params: TheoremParams, m: float, theta: ArrayLike) -> Any:
    """在给定 m、θ 处求证明中的边界表达式。

    Raises:
        SingularTheta: 任一 θ 落在表达式的极点上。
    """
    theta_arr = np.asarray(theta, dtype=float)
    values, singular = _theta_terms(params, m, np.atleast_1d(theta_arr))
    if np.any(singular):
        raise SingularTheta(f"{params.theorem.value} expression has a pole at the requested theta")
    return float(values[0]) if theta_arr.ndim == 0 else values


def theta_oracle(params: TheoremParams, m: float | None = None, M_theta: int = 200_000) -> float:
    """θ ∈ [0, 2π) 上等距网格的极值（T21 取最大，其余取最小），极点样本剔除并记录日志。

    m 缺省为 n；在 m = n 处结果应与闭式常数在网格分辨率内一致。
    """
    check_params(params)
    m = float(params.n if m is None else m)
    if m < params.n:
        raise ParamOutOfRange(f"m must be >= n={params.n}, got {m}")
    if M_theta < _MIN_THETA_SAMPLES:
        raise ParamOutOfRange(f"M_theta must be >= {_MIN_THETA_SAMPLES}, got {M_theta}")
    theta = 2.0 * np.pi * np.arange(M_theta) / M_theta
    values, singular = _theta_terms(params, m, theta)
    if np.any(singular):
        logger.warning(
            "oracle_samples_excluded",
            theorem=params.theorem.value,
            excluded=int(np.count_nonzero(singular)),
            samples=M_theta,
        )
        values = values[~singular]
    if values.size == 0:
        raise SingularTheta("every theta sample is singular")
    if params.theorem in _ORACLE_MAXIMIZE:
        return float(np.max(values))
    return float(np.min(values))


def oracle_check(
    params: TheoremParams, M_theta: int = 200_000, tol: float = 1e-6, m: float | None = None
) -> OracleResult:
    """θ 网格极值与闭式常数的对照。"""
    grid_value = theta_oracle(params, m=m, M_theta=M_theta)
    closed = hypothesis_bound(params)
    diff = abs(grid_value - closed)
    return OracleResult(
        params=params,
        m=float(params.n if m is None else m),
        samples=M_theta,
        grid_extremum=grid_value,
        closed_form=closed,
        difference=diff,
        ok=diff <= tol,
    )


# ---------------------------------------------------------------------------
# 假设与结论泛函
# ---------------------------------------------------------------------------


def normalized_derivative(f: FunctionSpec) -> Evaluator:
    """z ↦ f'(z)/(p z^{p-1})。"""
    d1 = f.series.derivative()
    p = f.p
    return lambda z: np.asarray(d1.eval_shifted(p - 1, z)) / p


def convexity_functional(f: FunctionSpec) -> Evaluator:
    """z ↦ 1 + z f''(z)/f'(z)，分子分母同以 p-1 平移求值。"""
    d1 = f.series.derivative()
    zd2 = d1.derivative().times_z()
    p = f.p
    return lambda z: 1.0 + np.asarray(quotient_eval(zd2, d1, p - 1, z))


def product_functional(f: FunctionSpec, beta: float, gamma: float) -> Evaluator:
    """z ↦ |f'/(pz^{p-1}) - 1|^β · |f''/z^{p-2} - (p-1) f'/z^{p-1}|^γ（实值，以复数组返回）。"""
    d1 = f.series.derivative()
    d2 = d1.derivative()
    p = f.p

    def evaluate(z: np.ndarray) -> np.ndarray:
        g0 = np.asarray(d1.eval_shifted(p - 1, z))
        first = np.abs(g0 / p - 1.0)
        second = np.abs(np.asarray(d2.eval_shifted(p - 2, z)) - (p - 1) * g0)
        return (first**beta * second**gamma).astype(np.complex128)

    return evaluate


def hypothesis_evaluator(params: TheoremParams, f: FunctionSpec) -> Evaluator:
    if params.theorem in (Theorem.T23A, Theorem.T23B):
        return product_functional(f, params.beta, params.gamma)
    return convexity_functional(f)


def hyp_value(params: TheoremParams, f: FunctionSpec, z: ArrayLike) -> Any:
    """假设量：T21/T22/T24 为 Re(1 + zf''/f')，T23A/T23B 为 β、γ 幂乘积。"""
    out = np.real(hypothesis_evaluator(params, f)(np.asarray(z, dtype=np.complex128)))
    return float(out) if np.ndim(out) == 0 else out


def conclusion_evaluator(params: TheoremParams, f: FunctionSpec) -> Evaluator:
    match params.theorem:
        case Theorem.T21 | Theorem.T23A:
            return normalized_derivative(f)
        case Theorem.T22 | Theorem.T23B:
            g = normalized_derivative(f)
            return lambda z: g(z) - 1.0
        case Theorem.T24:
            center = MobiusTarget(lambda_=params.lambda_).center
            return lambda z: np.asarray(starlike_quotient(f, z)) - center
    raise ParamOutOfRange(f"unknown theorem {params.theorem}")


def concl_value(params: TheoremParams, f: FunctionSpec, z: ArrayLike) -> Any:
    """结论量：T21/T23A 为 Re f'/(pz^{p-1})；T22/T23B 为 |f'/(pz^{p-1}) - 1|；
    T24 为 |(1/p) zf'/f - λ/(λ+1)|。"""
    value = conclusion_evaluator(params, f)(np.asarray(z, dtype=np.complex128))
    if params.theorem in (Theorem.T21, Theorem.T23A):
        out = np.real(value)
    else:
        out = np.abs(value)
    return float(out) if np.ndim(out) == 0 else out
