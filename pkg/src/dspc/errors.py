"""Exception hierarchy shared by every compiler stage and the engine."""

from typing import Iterable, List, Optional

from .models import Diagnostic


class DspcError(Exception):
    """Root of all errors raised by dspc."""


class SourceError(DspcError):
    """An error tied to a position in a source file."""

    code = "SourceError"

    def __init__(self, message: str, line: int, col: int, file: str = "<input>"):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col
        self.file = file

    def diagnostic(self) -> Diagnostic:
        return Diagnostic(
            file=self.file,
            line=self.line,
            col=self.col,
            severity="error",
            code=self.code,
            message=self.message,
        )

    def __str__(self) -> str:
        return self.diagnostic().render()


class LexError(SourceError):
    code = "LexError"


class ParseError(SourceError):
    code = "ParseError"


class AnalysisError(DspcError):
    """Raised once per batch with every error diagnostic collected."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics: List[Diagnostic] = list(diagnostics)
        super().__init__("\n".join(d.render() for d in self.errors))

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]

    @property
    def codes(self) -> List[str]:
        return [d.code for d in self.errors]


class LinkError(DspcError):
    """Call sites name modules that are not part of the program."""

    def __init__(self, missing: Iterable[str]):
        self.missing = sorted(set(missing))
        super().__init__(f"UnresolvedModule: {', '.join(self.missing)}")


class EmitError(DspcError):
    pass


class InputError(DspcError):
    """Bad run request: unknown module, missing or malformed input literal."""


class InternalError(DspcError):
    """A compiler invariant was broken; always a bug in dspc."""


class RuntimeFault(DspcError):
    """Aborts a run; never turned into a backtracking failure."""

    code = "RuntimeFault"

    def __init__(self, message: str, where: Optional[str] = None):
        self.where = where
        super().__init__(f"{self.code}: {message}" + (f" (in {where})" if where else ""))


class EmptyCellRead(RuntimeFault):
    code = "EmptyCellRead"


class StaleCellRead(RuntimeFault):
    code = "StaleCellRead"


class DivisionByZero(RuntimeFault):
    code = "DivisionByZero"


class DomainFault(RuntimeFault):
    code = "DomainFault"


class NonPositiveStep(RuntimeFault):
    code = "NonPositiveStep"


class DtypeFault(RuntimeFault):
    code = "DtypeFault"


class CommitDepthFault(RuntimeFault):
    code = "CommitDepthFault"


class RecursionDepthFault(RuntimeFault):
    code = "RecursionDepthFault"
