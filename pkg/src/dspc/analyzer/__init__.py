from .analyzer import (
    BUILTIN_CALLEES,
    AnalyzedMethod,
    AnalyzedModule,
    Analyzer,
    analyze,
    analyze_program,
    resolve_callee,
)
from .graph import DepGraph, StmtClass, classify
from .symbols import Symbol, SymbolTable
from .types import BUILTIN_FUNCTIONS, infer_type

__all__ = [
    "BUILTIN_CALLEES",
    "BUILTIN_FUNCTIONS",
    "AnalyzedMethod",
    "AnalyzedModule",
    "Analyzer",
    "DepGraph",
    "StmtClass",
    "Symbol",
    "SymbolTable",
    "analyze",
    "analyze_program",
    "classify",
    "infer_type",
    "resolve_callee",
]
