"""Error taxonomy shared by all engines.

Every error carries a stable machine-readable ``code`` which the CLI puts in
its structured error record.
"""

from __future__ import annotations


class LatsumError(Exception):
    code = "latsum_error"

    def to_record(self) -> dict:
        return {"kind": type(self).__name__, "code": self.code, "message": str(self)}


class DomainError(LatsumError, ValueError):
    code = "domain"


class PoleError(LatsumError, ValueError):
    code = "pole"


class ParseError(LatsumError, ValueError):
    code = "parse"

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnsupportedError(LatsumError):
    code = "unsupported"


class NotTSummable(LatsumError):
    code = "not_t_summable"


class NotHSummable(LatsumError):
    code = "not_h_summable"


class ExcludedParameter(LatsumError):
    code = "excluded_parameter"


class ConditioningError(LatsumError):
    code = "conditioning"


class TruncationBudgetExceeded(LatsumError):
    code = "truncation_budget"

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NotExtendable(LatsumError):
    code = "not_extendable"


class NotPositiveDefinite(LatsumError):
    code = "not_positive_definite"


class PoleParameter(LatsumError):
    """Raised for a parameter in the exceptional set; ``limit`` computes the nearby limit."""

    code = "pole_parameter"

    def __init__(self, message: str, limit=None):
        super().__init__(message)
        self.limit = limit


class PoleDetected(LatsumError):
    code = "pole_detected"

    def __init__(self, message: str, residue: complex = 0j):
        super().__init__(message)
        self.residue = residue


class OracleFailure(LatsumError):
    code = "oracle_failure"


class NotSupported(LatsumError):
    code = "not_supported"


ALL_ERRORS = (
    DomainError,
    PoleError,
    ParseError,
    UnsupportedError,
    NotTSummable,
    NotHSummable,
    ExcludedParameter,
    ConditioningError,
    TruncationBudgetExceeded,
    NotExtendable,
    NotPositiveDefinite,
    PoleParameter,
    PoleDetected,
    OracleFailure,
    NotSupported,
)
