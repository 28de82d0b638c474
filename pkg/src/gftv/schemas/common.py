"""通用记录契约：被记录而非抛出的错误说明。"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from gftv.core.errors import GftvError


class ErrorNote(BaseModel):
    """报告中记录的求值错误。"""

    model_config = ConfigDict(frozen=True)

    code: str = Field(..., description="稳定的错误码，如 denominator_vanishes")
    message: str = Field("", description="可展示的诊断信息")

    @classmethod
    def from_exception(cls, exc: Exception) -> ErrorNote:
        if isinstance(exc, GftvError):
            return cls(code=exc.code, message=exc.message)
        return cls(code=type(exc).__name__, message=str(exc))
