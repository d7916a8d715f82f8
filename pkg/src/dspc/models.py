"""Pydantic models for records that leave the engine: diagnostics, solutions, reports."""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class Diagnostic(BaseModel):
    """One compiler message, rendered as file:line:col: severity: message."""

    file: str = Field("<input>", description="Source file name")
    line: int = Field(..., ge=1)
    col: int = Field(..., ge=1)
    severity: Literal["error", "warning"] = "error"
    code: str = Field(..., description="Machine-readable kind, e.g. CyclicDependency")
    message: str

    def render(self) -> str:
        return f"{self.file}:{self.line}:{self.col}: {self.severity}: {self.code}: {self.message}"


class VerifyViolation(BaseModel):
    """A verify condition that evaluated to false on a solution's path."""

    model_config = ConfigDict(frozen=True)

    condition: str = Field(..., description="Source text of the condition")
    method: str = Field(..., description="module/method index, e.g. plan/1")
    bindings: Dict[str, Any] = Field(
        default_factory=dict, description="Variables bound when the check ran"
    )


class Solution(BaseModel):
    """Output values of one solution plus the violations on its path."""

    outputs: Dict[str, Any] = Field(default_factory=dict)
    violations: List[VerifyViolation] = Field(default_factory=list)

    def to_jsonl(self) -> str:
        return self.model_dump_json()

    def to_text(self) -> str:
        text = ", ".join(f"{name}={format_value(v)}" for name, v in self.outputs.items())
        if not text:
            text = "yes"
        if self.violations:
            failed = "; ".join(v.condition for v in self.violations)
            text += f"  [verify failed: {failed}]"
        return text


class EngineStats(BaseModel):
    """Counters read from a VM after a run."""

    exec_steps: int = 0
    pushes: int = 0
    pops: int = 0
    peak_depth: int = 0
    commits: int = 0
    solutions: int = 0


class BenchReport(BaseModel):
    """One row of the bench table: a program drained on one engine."""

    program: str
    engine: Literal["vm", "oracle"]
    inputs: Dict[str, Any] = Field(default_factory=dict)
    solutions: int = Field(..., ge=0)
    trials: int = Field(..., ge=1)
    mean_ms: float
    std_ms: float
    stats: Optional[EngineStats] = Field(None, description="VM counters, last trial")


def format_value(value: Any) -> str:
    """Render a runtime value with the language's literal syntax."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    return repr(value)
