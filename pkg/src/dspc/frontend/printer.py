"""Canonical source rendering of the AST."""

from typing import List, Tuple

from .ast import (
    Binary,
    Bind,
    Bool,
    Call,
    Expr,
    Find,
    ForGen,
    Func,
    ListLit,
    MethodDecl,
    ModuleDecl,
    Num,
    ParamDecl,
    SelectGen,
    Stmt,
    Tester,
    Unary,
    Var,
)

_PREC = {"=<": 1, ">=": 1, "<": 1, ">": 1, "=": 1, "\\=": 1,
         "+": 2, "-": 2, "*": 3, "/": 3, "^": 5}
_UNARY = 4
_ATOM = 6


def _prec(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Unary):
        return _UNARY
    return _ATOM


def _wrap(expr: Expr, parens: bool) -> str:
    text = format_expr(expr)
    return f"({text})" if parens else text


def format_number(value: object) -> str:
    return repr(value)


def format_expr(expr: Expr) -> str:
    if isinstance(expr, Num):
        return format_number(expr.value)
    if isinstance(expr, Bool):
        return "true" if expr.value else "false"
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Unary):
        # a nested minus must not print as "--", which starts a comment
        return "-" + _wrap(expr.operand, _prec(expr.operand) <= _UNARY)
    if isinstance(expr, Func):
        return f"{expr.name}({', '.join(format_expr(a) for a in expr.args)})"
    if isinstance(expr, ListLit):
        return f"[{', '.join(format_expr(a) for a in expr.items)}]"
    prec = _PREC[expr.op]
    if expr.op == "^":
        left = _wrap(expr.left, _prec(expr.left) <= prec)
        right = _wrap(expr.right, _prec(expr.right) < _UNARY)
    elif prec == 1:
        left = _wrap(expr.left, _prec(expr.left) <= prec)
        right = _wrap(expr.right, _prec(expr.right) <= prec)
    else:
        left = _wrap(expr.left, _prec(expr.left) < prec)
        right = _wrap(expr.right, _prec(expr.right) <= prec)
    return f"{left} {expr.op} {right}"


def format_stmt(stmt: Stmt) -> str:
    if isinstance(stmt, Bind):
        rhs = stmt.rhs
        if isinstance(rhs, ForGen):
            text = (f"for({format_expr(rhs.begin)}, {format_expr(rhs.end)}, "
                    f"{format_expr(rhs.step)})")
        elif isinstance(rhs, SelectGen):
            text = f"select({format_expr(rhs.source)})"
        else:
            text = format_expr(rhs)
        return f"{stmt.target} : {stmt.dtype} = {text};"
    if isinstance(stmt, Tester):
        return f"{stmt.op}({format_expr(stmt.cond)});"
    ins = ", ".join(format_expr(e) for e in stmt.inputs)
    if isinstance(stmt, Call):
        return f"{stmt.op}({stmt.callee}, {{{ins}}}, {{{', '.join(stmt.outputs)}}});"
    if isinstance(stmt, Find):
        return f"find({stmt.callee}, {{{ins}}}, {stmt.target});"
    raise TypeError(f"not a statement: {stmt!r}")


def _params(params: Tuple[ParamDecl, ...]) -> str:
    return "{" + ", ".join(f"{p.name} : {p.dtype}" for p in params) + "}"


def format_method(method: MethodDecl, indent: str = "  ") -> List[str]:
    lines = [f"{indent}method"]
    lines += [f"{indent}  {format_stmt(s)}" for s in method.statements]
    lines.append(f"{indent}end method;")
    return lines


def format_module(module: ModuleDecl) -> str:
    lines = [f"{module.name}({_params(module.inputs)}, {_params(module.outputs)})"]
    for method in module.methods:
        lines += format_method(method)
    lines.append("end module;")
    return "\n".join(lines) + "\n"


def format_signature(module: ModuleDecl) -> str:
    return f"{module.name}({_params(module.inputs)}, {_params(module.outputs)})"
