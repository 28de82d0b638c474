"""验证报告、语料汇总、Jack 引理报告与 oracle 结果的数据契约。

所有模型都以 JSON lines 形式写出（records 格式），字段顺序稳定；
±inf 以 Infinity/-Infinity 常量序列化。
"""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field

from gftv.schemas.common import ErrorNote
from gftv.schemas.functions import FunctionSpec
from gftv.schemas.params import TheoremParams


class Status(str, Enum):
    BOTH_HOLD = "BOTH_HOLD"
    VACUOUS = "VACUOUS"
    VIOLATION = "VIOLATION"
    INCONCLUSIVE = "INCONCLUSIVE"


class VerificationReport(BaseModel):
    """单个函数、单个定理的验证结果。边距方向统一为"正 = 成立"。"""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    function_id: str
    params: TheoremParams
    radius: float = Field(..., description="计算边距所用的最外层半径")
    samples: int = Field(..., description="每个圆上的角向采样数 M")
    tol: float
    hyp_margin: float | None = None
    concl_margin: float | None = None
    status: Status
    tail_bound: float = 0.0
    principle_ok: bool | None = Field(None, description="跨半径的极值原理交叉检查")
    notes: list[str] = Field(default_factory=list)
    error: ErrorNote | None = None

    def sort_key(self) -> tuple[str, str, str]:
        return (self.function_id, self.params.theorem.value, self.params.label())


class CorpusReport(BaseModel):
    """run_corpus 的汇总：逐条报告（语料顺序）与各状态计数。"""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    params: TheoremParams
    reports: list[VerificationReport] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def counts(self) -> dict[str, int]:
        out = {s.value: 0 for s in Status}
        for r in self.reports:
            out[r.status.value] += 1
        return out

    @property
    def violations(self) -> int:
        return self.counts[Status.VIOLATION.value]


class Witness(BaseModel):
    """反例搜索返回的见证函数，已在加密网格上复核。"""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    trial_index: int
    seed: int
    delta: float
    function: FunctionSpec
    report: VerificationReport
    recheck: VerificationReport


class JackReport(BaseModel):
    """|w| 在 |z| = r0 上的最大点 z0 处的 m = z0 w'(z0)/w(z0) 及检查结果。"""

    model_config = ConfigDict(frozen=True)

    r0: float
    z0: complex
    order: int
    m_estimate: complex
    residual: float = Field(..., description="|Im m|")
    second_value: float = Field(..., description="Re(z0 w''(z0)/w'(z0)) + 1")
    tolerance: float = 1e-4

    @computed_field  # type: ignore[prop-decorator]
    @property
    def real_part_ok(self) -> bool:
        return self.m_estimate.real >= self.order - self.tolerance

    @computed_field  # type: ignore[prop-decorator]
    @property
    def residual_ok(self) -> bool:
        return self.residual <= self.tolerance

    @computed_field  # type: ignore[prop-decorator]
    @property
    def second_ok(self) -> bool:
        return self.second_value >= self.m_estimate.real - 1e-3

    @property
    def ok(self) -> bool:
        return self.real_part_ok and self.residual_ok and self.second_ok


class OracleResult(BaseModel):
    """θ 网格极值与闭式常数的对照。"""

    model_config = ConfigDict(frozen=True)

    params: TheoremParams
    m: float
    samples: int
    grid_extremum: float
    closed_form: float
    difference: float
    ok: bool


class ValenceResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    function_id: str
    p: int
    radius: float
    samples: int
    winding: int | None = None
    error: ErrorNote | None = None

    @property
    def ok(self) -> bool:
        return self.winding == self.p


class BoundRecord(BaseModel):
    """bounds 子命令的一行：定理常数、结论阈值或 λ 区间。"""

    model_config = ConfigDict(frozen=True)

    theorem: str
    params: str
    bound: float | None = None
    threshold: float | None = None
    lambda1: float | None = None
    lambda2: float | None = None
    note: str = ""
