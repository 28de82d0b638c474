"""gftv 的结构化日志。

导入即安装库模式默认配置：WARNING 以下丢弃，其余经标准库 logging 输出（未配置时落到 stderr）。
命令行入口调用 configure_logging 后改为写入 log_dir 下的轮转文件，每行带 run_id。
"""

import logging
import logging.handlers
import os
from contextvars import ContextVar
from uuid import uuid4

import structlog

LOGGER_NAME = "gftv"
# 轮转文件份数（按小时轮转）：全量约一周，错误约一个月
ALL_LOG_BACKUPS = 24 * 7
ERROR_LOG_BACKUPS = 24 * 30

run_id_ctx: ContextVar[str] = ContextVar("run_id", default="")


def get_run_id() -> str:
    return run_id_ctx.get() or ""


def set_run_id(rid: str | None = None) -> str:
    """设置本次运行的 run_id，缺省生成 12 位十六进制串。"""
    rid = rid or uuid4().hex[:12]
    run_id_ctx.set(rid)
    return rid


def add_run_id(logger: logging.Logger, method_name: str, event_dict: dict) -> dict:
    rid = get_run_id()
    if rid:
        event_dict["run_id"] = rid
    return event_dict


def _shared_processors() -> list:
    return [
        structlog.contextvars.merge_contextvars,
        add_run_id,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]


def configure_library_defaults() -> None:
    """库模式：不写文件，不缓存 logger，之后的 configure_logging 可以覆盖。"""
    structlog.configure(
        processors=[
            add_run_id,
            structlog.processors.add_log_level,
            structlog.processors.KeyValueRenderer(key_order=["level", "event", "run_id"]),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.make_filtering_bound_logger(logging.WARNING),
        context_class=dict,
        cache_logger_on_first_use=False,
    )


def _rotating_handler(
    path: str, backups: int, level: int, formatter: logging.Formatter
) -> logging.Handler:
    handler = logging.handlers.TimedRotatingFileHandler(
        filename=path, when="H", interval=1, backupCount=backups, encoding="utf-8"
    )
    handler.setFormatter(formatter)
    handler.setLevel(level)
    return handler


def configure_logging(log_level: str = "INFO", log_dir: str = "./logs") -> None:
    """gftv.log 收全部级别，error.log 只收 ERROR；key=value 单行文本。

    重复调用会替换已有 handler。gftv logger 不向 root 传播。
    """
    os.makedirs(log_dir, exist_ok=True)
    level = getattr(logging, log_level.upper(), logging.INFO)

    formatter = structlog.stdlib.ProcessorFormatter(
        processor=structlog.processors.KeyValueRenderer(
            key_order=["timestamp", "level", "event", "run_id"]
        ),
        foreign_pre_chain=_shared_processors(),
    )

    root = logging.getLogger(LOGGER_NAME)
    root.setLevel(level)
    for handler in root.handlers:
        handler.close()
    root.handlers.clear()
    all_path = os.path.join(log_dir, "gftv.log")
    error_path = os.path.join(log_dir, "error.log")
    root.addHandler(_rotating_handler(all_path, ALL_LOG_BACKUPS, level, formatter))
    root.addHandler(_rotating_handler(error_path, ERROR_LOG_BACKUPS, logging.ERROR, formatter))
    root.propagate = False

    structlog.configure(
        processors=[
            *_shared_processors(),
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)


configure_library_defaults()
