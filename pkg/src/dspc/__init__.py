"""dspc: compiler and backtracking engine for the DSP nondeterministic functional language."""

from .errors import AnalysisError, DspcError, LinkError, RuntimeFault
from .models import BenchReport, Diagnostic, EngineStats, Solution, VerifyViolation
from .pipeline import Compiler, Program, corpus_path, parse_inputs, solve

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "BenchReport",
    "Compiler",
    "Diagnostic",
    "DspcError",
    "EngineStats",
    "LinkError",
    "Program",
    "RuntimeFault",
    "Solution",
    "VerifyViolation",
    "corpus_path",
    "parse_inputs",
    "solve",
]
