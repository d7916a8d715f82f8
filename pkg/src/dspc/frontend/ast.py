"""AST of DSP modules.

Nodes are frozen dataclasses. Source positions are excluded from equality so
a pretty-printed and re-parsed module compares equal to the original.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple, Union

DTYPES = ("real", "int", "bool", "list")


ARITH_OPS = ("+", "-", "*", "/", "^")
COMPARE_OPS = ("=<", ">=", "<", ">", "=", "\\=")


@dataclass(frozen=True)
class Span:
    line: int = 1
    col: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NOWHERE = Span()


# Expressions

@dataclass(frozen=True)
class Num:
    value: Union[int, float]
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class Bool:
    value: bool
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class Func:
    name: str
    args: Tuple["Expr", ...]
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class ListLit:
    items: Tuple["Expr", ...]
    span: Span = field(default=NOWHERE, compare=False)


Expr = Union[Num, Bool, Var, Unary, Binary, Func, ListLit]


def children(expr: Expr) -> Tuple[Expr, ...]:
    if isinstance(expr, Unary):
        return (expr.operand,)
    if isinstance(expr, Binary):
        return (expr.left, expr.right)
    if isinstance(expr, Func):
        return expr.args
    if isinstance(expr, ListLit):
        return expr.items
    return ()


def variables(expr: Expr) -> Iterator[Var]:
    """Variable references of an expression, left to right."""
    if isinstance(expr, Var):
        yield expr
    for child in children(expr):
        yield from variables(child)


# Generator right-hand sides of a binding

@dataclass(frozen=True)
class ForGen:
    begin: Expr
    end: Expr
    step: Expr
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class SelectGen:
    source: Expr
    span: Span = field(default=NOWHERE, compare=False)


Rhs = Union[Expr, ForGen, SelectGen]


# Statements

@dataclass(frozen=True)
class Bind:
    target: str
    dtype: str
    rhs: Rhs
    span: Span = field(default=NOWHERE, compare=False)

    @property
    def kind(self) -> str:
        return "Bind"


@dataclass(frozen=True)
class Tester:
    op: str
    cond: Expr
    span: Span = field(default=NOWHERE, compare=False)

    @property
    def kind(self) -> str:
        return self.op.capitalize()


@dataclass(frozen=True)
class Call:
    op: str
    callee: str
    inputs: Tuple[Expr, ...]
    outputs: Tuple[str, ...]
    span: Span = field(default=NOWHERE, compare=False)

    @property
    def kind(self) -> str:
        return self.op.capitalize()


@dataclass(frozen=True)
class Find:
    callee: str
    inputs: Tuple[Expr, ...]
    target: str
    span: Span = field(default=NOWHERE, compare=False)

    @property
    def kind(self) -> str:
        return "Find"


Stmt = Union[Bind, Tester, Call, Find]


def stmt_exprs(stmt: Stmt) -> Tuple[Expr, ...]:
    """Expressions a statement evaluates, in evaluation order."""
    if isinstance(stmt, Bind):
        rhs = stmt.rhs
        if isinstance(rhs, ForGen):
            return (rhs.begin, rhs.end, rhs.step)
        if isinstance(rhs, SelectGen):
            return (rhs.source,)
        return (rhs,)
    if isinstance(stmt, Tester):
        return (stmt.cond,)
    return stmt.inputs


def stmt_reads(stmt: Stmt) -> Tuple[str, ...]:
    """Names read by a statement, first occurrence order, no duplicates."""
    seen: dict = {}
    for expr in stmt_exprs(stmt):
        for var in variables(expr):
            seen.setdefault(var.name, None)
    return tuple(seen)


def stmt_defines(stmt: Stmt) -> Tuple[str, ...]:
    if isinstance(stmt, Bind):
        return (stmt.target,)
    if isinstance(stmt, Call):
        return stmt.outputs
    if isinstance(stmt, Find):
        return (stmt.target,)
    return ()


# Declarations

@dataclass(frozen=True)
class ParamDecl:
    name: str
    dtype: str
    span: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class MethodDecl:
    statements: Tuple[Stmt, ...]
    span: Span = field(default=NOWHERE, compare=False)
    end: Span = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    inputs: Tuple[ParamDecl, ...]
    outputs: Tuple[ParamDecl, ...]
    methods: Tuple[MethodDecl, ...]
    span: Span = field(default=NOWHERE, compare=False)
    file: Optional[str] = field(default=None, compare=False)

    def param(self, name: str) -> Optional[ParamDecl]:
        for p in self.inputs + self.outputs:
            if p.name == name:
                return p
        return None
