"""领域异常体系。

刻意不继承 ValueError：在 pydantic 校验器中抛出时原样透传，
而结构性校验仍用 ValueError，由 pydantic 包装为 ValidationError。
"""

from __future__ import annotations


class GftvError(Exception):
    """所有领域异常的基类，code 为稳定的机器可读错误码。"""

    code: str = "gftv_error"

    def __init__(self, message: str = "") -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message or self.code


class GapViolation(GftvError):
    """A_{p,n} 缺项约束被破坏：p < k < p+n 处出现非零系数。"""

    code = "gap_violation"


class IndexOutOfRange(GftvError):
    code = "index_out_of_range"


class ShiftUnderflow(GftvError):
    """平移求值时存在低于 shift 的非零指标。"""

    code = "shift_underflow"


class DenominatorVanishes(GftvError):
    """商的分母在采样点处（近似）为零。"""

    code = "denominator_vanishes"


class ZeroOnContour(GftvError):
    code = "zero_on_contour"


class UnstableWinding(GftvError):
    code = "unstable_winding"


class ParamOutOfRange(GftvError):
    code = "param_out_of_range"


class SingularTheta(GftvError):
    """边界表达式在该 θ 处有极点。"""

    code = "singular_theta"


class ExtraZeros(GftvError):
    """f 在 0<|z|<r 内还有零点（卷绕数 ≠ p）。"""

    code = "extra_zeros"


class UnknownName(GftvError):
    code = "unknown_name"


class DegenerateMax(GftvError):
    code = "degenerate_max"


class MalformedFile(GftvError):
    """语料文件格式错误，附带行号与字段名。"""

    code = "malformed_file"

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


class InvariantViolation(GftvError):
    """文件中的条目未通过 make_function 校验。"""

    code = "invariant_violation"

    def __init__(self, message: str, *, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class UsageError(GftvError):
    """命令行用法错误，退出码 64。"""

    code = "usage_error"
