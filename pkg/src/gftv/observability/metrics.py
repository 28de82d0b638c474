"""Prometheus 指标：验证结果计数、求值错误、验证耗时与语料规模。

使用独立 CollectorRegistry，CLI 退出前可按 textfile collector 格式写出。"""

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, write_to_textfile

registry = CollectorRegistry()

verifications_total = Counter(
    "gftv_verifications_total",
    "各定理的验证结果计数",
    ["theorem", "status"],
    registry=registry,
)
evaluation_errors_total = Counter(
    "gftv_evaluation_errors_total",
    "求值过程中被记录（而非抛出）的错误次数",
    ["error_type"],
    registry=registry,
)
verify_seconds = Histogram(
    "gftv_verify_seconds",
    "单个函数验证耗时分布（秒）",
    ["theorem"],
    buckets=(0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0),
    registry=registry,
)
corpus_size = Gauge(
    "gftv_corpus_size",
    "最近一次批量验证的语料条目数",
    registry=registry,
)


def write_metrics(path: str) -> None:
    """以 Prometheus 文本格式写出当前指标。"""
    write_to_textfile(path, registry)
