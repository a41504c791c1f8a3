"""
Report schema.

One JSON document per run:

    {command, params: {N, A, lambda1, lambda2},
     checks: [{name, paper_ref, status, kind, value, target, residual,
               tolerance, elapsed_ms, description}],
     version, seed}

Numbers from mpmath are rendered as strings at fixed significant digits so
equal runs serialize identically.
"""

import json
from fractions import Fraction
from typing import Any, List, Literal, Optional

import mpmath
from pydantic import BaseModel, Field

Status = Literal["pass", "fail", "error", "refused", "skipped"]
Kind = Literal["exact", "numeric"]

DIGITS = 20


def to_jsonable(value: Any) -> Any:
    """Recursively convert mpmath numbers, fractions and algebra objects to JSON values."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, mpmath.mpc):
        if value.imag == 0:
            return mpmath.nstr(value.real, DIGITS)
        return {"re": mpmath.nstr(value.real, DIGITS), "im": mpmath.nstr(value.imag, DIGITS)}
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, DIGITS)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


class CheckRecord(BaseModel):
    """Outcome of one check."""

    name: str = Field(description="Check name")
    paper_ref: str = Field(default="", description="Locator of the reproduced result, e.g. \"Thm. 5.5\"")
    status: Status = Field(description="pass, fail, error, refused or skipped")
    kind: Kind = Field(default="exact", description="exact or numeric")
    value: Any = Field(default=None, description="Computed value, rank or diagnostics")
    target: Any = Field(default=None, description="Expected value")
    residual: Optional[str] = Field(default=None, description="|value - target| for numeric checks")
    tolerance: Optional[float] = Field(default=None, description="Acceptance tolerance")
    elapsed_ms: float = Field(default=0.0, description="Wall time")
    description: str = Field(default="", description="The verified statement in plain words")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class ReportParams(BaseModel):
    N: int
    A: int
    lambda1: str
    lambda2: str


class Report(BaseModel):
    """Machine-readable result of one CLI run."""

    command: str
    params: ReportParams
    checks: List[CheckRecord] = Field(default_factory=list)
    version: str
    seed: int

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> dict:
        counts = {}
        for check in self.checks:
            counts[check.status] = counts.get(check.status, 0) + 1
        return counts

    def to_json(self, include_timing: bool = True, indent: Optional[int] = 2) -> str:
        exclude = {"checks": {"__all__": {"elapsed_ms"}}} if not include_timing else None
        data = self.model_dump(mode="json", exclude=exclude)
        return json.dumps(data, indent=indent, sort_keys=True)
