"""Expressions compiled to closures over an environment.

`compile_expr` is parameterized by `read`, which turns a variable name into
a closure fetching its value, so lowered frames, dictionaries and cells all
share one compiler.
"""

from typing import Any, Callable, Mapping

from ..errors import EmptyCellRead, InternalError
from ..frontend.ast import Binary, Bool, Expr, Func, ListLit, Num, Unary, Var
from .values import BINARY, FUNCTIONS, Value

Compiled = Callable[[Any], Value]
Reader = Callable[[str], Compiled]


def compile_expr(expr: Expr, read: Reader) -> Compiled:
    if isinstance(expr, (Num, Bool)):
        value = expr.value
        return lambda env: value
    if isinstance(expr, Var):
        return read(expr.name)
    if isinstance(expr, Unary):
        operand = compile_expr(expr.operand, read)
        return lambda env: -operand(env)
    if isinstance(expr, Binary):
        left = compile_expr(expr.left, read)
        right = compile_expr(expr.right, read)
        op = expr.op
        if op == "+":
            return lambda env: left(env) + right(env)
        if op == "-":
            return lambda env: left(env) - right(env)
        if op == "*":
            return lambda env: left(env) * right(env)
        fn = BINARY[op]
        return lambda env: fn(left(env), right(env))
    if isinstance(expr, Func):
        fn = FUNCTIONS.get(expr.name)
        if fn is None:
            raise InternalError(f"unknown function {expr.name!r} survived analysis")
        args = [compile_expr(a, read) for a in expr.args]
        if len(args) == 1:
            (arg,) = args
            return lambda env: fn(arg(env))
        return lambda env: fn(*[a(env) for a in args])
    if isinstance(expr, ListLit):
        items = [compile_expr(a, read) for a in expr.items]
        return lambda env: tuple(f(env) for f in items)
    raise InternalError(f"not an expression: {expr!r}")


def _read_mapping(name: str) -> Compiled:
    def read(env: Mapping[str, Value]) -> Value:
        try:
            return env[name]
        except KeyError:
            raise EmptyCellRead(f"variable {name!r} is unbound") from None

    return read


def eval_expr(expr: Expr, env: Mapping[str, Value]) -> Value:
    """Evaluate against a name -> value mapping."""
    return compile_expr(expr, _read_mapping)(env)
