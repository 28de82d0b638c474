"""全局测试 fixtures：测试数据工厂、快速采样计划与日志目录隔离。"""

from __future__ import annotations

import os
from collections.abc import Mapping

import pytest

from gftv.core.config import get_settings
from gftv.observability.logging import configure_logging
from gftv.schemas.functions import FunctionSpec, make_function
from gftv.schemas.params import GridSpec, Theorem, TheoremParams


# ---------------------------------------------------------------------------
# 测试数据工厂
# ---------------------------------------------------------------------------


def make_poly(p: int = 1, n: int = 1, coeffs: Mapping[int, complex] | None = None, N: int = 64) -> FunctionSpec:
    """z^p + Σ coeffs[k] z^k。"""
    return make_function(p, n, coeffs or {}, N)


def make_params(theorem: str | Theorem = "t21", **kwargs) -> TheoremParams:
    if "lambda" in kwargs:
        kwargs["lambda_"] = kwargs.pop("lambda")
    return TheoremParams(theorem=Theorem(theorem), **kwargs)


def fast_grid(radii: tuple[float, ...] = (0.9, 0.99, 0.999), M: int = 1024, tol: float = 1e-9) -> GridSpec:
    return GridSpec(radii=radii, angular_count=M, tol=tol)


# ---------------------------------------------------------------------------
# 环境隔离
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session", autouse=True)
def session_logging(tmp_path_factory):
    """在任何模块 logger 首次使用前完成 structlog 配置，避免缓存默认的 stdout 输出。"""
    configure_logging("DEBUG", str(tmp_path_factory.mktemp("logs")))


@pytest.fixture(autouse=True)
def isolated_env(tmp_path, monkeypatch):
    """日志写到临时目录，清除可能覆盖默认值的 GFTV_ 环境变量。"""
    for key in list(os.environ):
        if key.startswith("GFTV_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("GFTV_LOG_DIR", str(tmp_path / "logs"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def grid() -> GridSpec:
    return fast_grid()
