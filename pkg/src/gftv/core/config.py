"""基于 Pydantic Settings 的配置管理，支持环境变量、.env 与可选 YAML 配置文件分层加载。"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from gftv.schemas.params import GridSpec, check_radii


class Settings(BaseSettings):
    """
    全局配置。环境变量前缀 GFTV_，优先级：显式参数 > 环境变量 > .env > 默认值。
    """

    model_config = SettingsConfigDict(
        env_prefix="GFTV_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    # 日志目录，按小时轮转；gftv.log 为全部级别，error.log 仅 ERROR
    log_dir: str = "./logs"

    # 并行上限，0 表示按 CPU 数自动决定（GFTV_THREADS）
    threads: int = 0

    # 经典级数（如 z/(1-z)）的默认截断阶
    truncation_order: int = 64

    # 边界采样默认计划
    grid_radii: tuple[float, ...] = (0.9, 0.99, 0.999)
    angular_count: int = 4096
    tol: float = 1e-9

    # θ 网格 oracle
    theta_samples: int = 200_000
    oracle_tol: float = 1e-6

    # 非空时在 CLI 退出前写出 Prometheus 文本格式指标
    metrics_file: str = ""

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        allowed = ("DEBUG", "INFO", "WARNING", "ERROR")
        u = v.upper()
        if u not in allowed:
            raise ValueError(f"log_level must be one of {allowed}")
        return u

    @field_validator("grid_radii")
    @classmethod
    def validate_grid_radii(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        return check_radii(v)

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        if v < 0:
            raise ValueError("threads must be >= 0")
        return v

    @field_validator("truncation_order")
    @classmethod
    def validate_truncation_order(cls, v: int) -> int:
        if v < 1:
            raise ValueError("truncation_order must be >= 1")
        return v

    @field_validator("angular_count")
    @classmethod
    def validate_angular_count(cls, v: int) -> int:
        if v < 16:
            raise ValueError("angular_count must be >= 16")
        return v

    @field_validator("tol", "oracle_tol")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tolerances must be > 0")
        return v

    @field_validator("theta_samples")
    @classmethod
    def validate_theta_samples(cls, v: int) -> int:
        if v < 1000:
            raise ValueError("theta_samples must be >= 1000")
        return v

    def default_grid(self) -> GridSpec:
        """按当前配置构造默认采样计划。"""
        return GridSpec(radii=self.grid_radii, angular_count=self.angular_count, tol=self.tol)

    def resolve_threads(self) -> int:
        """返回实际并行度，0 映射为 CPU 数。"""
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1


@lru_cache
def get_settings() -> Settings:
    """获取单例配置，便于测试时覆盖。"""
    return Settings()


def load_settings(config_path: str | Path | None = None, **overrides: Any) -> Settings:
    """读取可选 YAML 配置文件并叠加显式覆盖项（命令行参数优先于文件）。

    Args:
        config_path: YAML 文件路径，键名与 Settings 字段一致；None 表示不读文件。
        overrides: 显式覆盖项，值为 None 的键被忽略。

    Raises:
        FileNotFoundError: 指定的配置文件不存在。
        ValueError: YAML 顶层不是映射。
    """
    data: dict[str, Any] = {}
    if config_path:
        path = Path(config_path)
        if not path.is_file():
            raise FileNotFoundError(f"config file not found: {path}")
        loaded = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(loaded, dict):
            raise ValueError("config file must contain a mapping at top level")
        known = set(Settings.model_fields)
        data.update({k: v for k, v in loaded.items() if k in known})
    data.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**data)
