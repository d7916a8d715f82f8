"""Execution engine shared by lowered graphs and emitted Python modules."""

from .cells import EMPTY, AuditedVarCell, VarCell
from .engine import FAILURE, SUCCESS, VM, Executable, Terminal, vm_call, vm_redo
from .expr import compile_expr, eval_expr
from .primitives import (
    Alternatives,
    BuiltinFor,
    BuiltinSelect,
    Callee,
    Collect,
    Commit,
    FindFinish,
    call_module,
    dcall_module,
    find_all,
    gen_for,
    gen_select,
)
from .values import BINARY, FUNCTIONS, coerce, div, power, sqrt, truth

__all__ = [
    "EMPTY",
    "FAILURE",
    "SUCCESS",
    "VM",
    "Alternatives",
    "AuditedVarCell",
    "BuiltinFor",
    "BuiltinSelect",
    "Callee",
    "Collect",
    "Commit",
    "Executable",
    "FindFinish",
    "Terminal",
    "VarCell",
    "BINARY",
    "FUNCTIONS",
    "call_module",
    "coerce",
    "compile_expr",
    "dcall_module",
    "div",
    "eval_expr",
    "find_all",
    "gen_for",
    "gen_select",
    "power",
    "sqrt",
    "truth",
    "vm_call",
    "vm_redo",
]
