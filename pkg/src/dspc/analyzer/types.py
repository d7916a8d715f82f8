"""Static dtypes of expressions.

Dtypes are the declared set {real, int, bool, list} plus `any`, the type of a
list element. An `any` value may only be bound to a declared variable, passed
to a call, stored in a list or compared with `=`/`\\=`; the bind or call checks
it at run time.
"""

from typing import Callable, Dict, Optional, Sequence, Tuple

from ..frontend.ast import Binary, Bool, Expr, Func, ListLit, Num, Span, Unary, Var

NUMERIC = ("int", "real")
ANY = "any"

Report = Callable[[str, Span, str], None]
Lookup = Callable[[str], Optional[str]]

# name -> (min arity, max arity). Result types are computed in `_func`.
BUILTIN_FUNCTIONS: Dict[str, Tuple[int, int]] = {
    "sqrt": (1, 1),
    "abs": (1, 1),
    "min": (2, 99),
    "max": (2, 99),
    "len": (1, 1),
    "head": (1, 1),
    "tail": (1, 1),
    "nth": (2, 2),
    "cons": (2, 2),
    "remove": (2, 2),
}


def assignable(source: str, target: str) -> bool:
    """Whether a value of dtype `source` may be stored in a `target` slot."""
    return source == target or source == ANY or (source == "int" and target == "real")


def numeric_result(types: Sequence[str]) -> str:
    return "int" if all(t == "int" for t in types) else "real"


class ExprTyper:
    """Computes expression dtypes, reporting problems through `report`."""

    def __init__(self, lookup: Lookup, report: Optional[Report] = None):
        self.lookup = lookup
        self.report = report or (lambda code, span, msg: None)

    def __call__(self, expr: Expr) -> str:
        return self.infer(expr)

    def infer(self, expr: Expr) -> str:
        if isinstance(expr, Num):
            return "int" if isinstance(expr.value, int) else "real"
        if isinstance(expr, Bool):
            return "bool"
        if isinstance(expr, Var):
            dtype = self.lookup(expr.name)
            if dtype is None:
                self.report("UnknownVariable", expr.span, f"variable {expr.name!r} is never defined")
                return ANY
            return dtype
        if isinstance(expr, ListLit):
            for item in expr.items:
                self.infer(item)
            return "list"
        if isinstance(expr, Unary):
            return self._numeric(self.infer(expr.operand), expr.span, "unary minus")
        if isinstance(expr, Binary):
            return self._binary(expr)
        return self._func(expr)

    def _numeric(self, dtype: str, span: Span, what: str) -> str:
        if dtype not in NUMERIC:
            self.report("TypeMismatch", span, f"{what} needs a number, got {dtype}")
            return "real"
        return dtype

    def _binary(self, expr: Binary) -> str:
        left = self.infer(expr.left)
        right = self.infer(expr.right)
        op = expr.op
        if op in ("=", "\\="):
            if ANY not in (left, right):
                same = left == right or (left in NUMERIC and right in NUMERIC)
                if not same:
                    self.report("TypeMismatch", expr.span,
                                f"cannot compare {left} with {right} using {op}")
            if left == "real" and right == "real":
                self.report("RealEquality", expr.span,
                            f"exact {op} on two real expressions")
            return "bool"
        what = f"operator {op}"
        left = self._numeric(left, expr.span, what)
        right = self._numeric(right, expr.span, what)
        if op in ("=<", ">=", "<", ">"):
            return "bool"
        if op in ("/", "^"):
            return "real"
        return numeric_result((left, right))

    def _func(self, expr: Func) -> str:
        name = expr.name
        args = [self.infer(a) for a in expr.args]
        if name not in BUILTIN_FUNCTIONS:
            self.report("UnknownFunction", expr.span, f"unknown function {name!r}")
            return ANY
        lo, hi = BUILTIN_FUNCTIONS[name]
        if not lo <= len(args) <= hi:
            self.report("ArityMismatch", expr.span,
                        f"{name} takes {lo if lo == hi else f'{lo} or more'} argument(s), "
                        f"got {len(args)}")
            return ANY
        what = f"argument of {name}"
        if name == "sqrt":
            self._numeric(args[0], expr.span, what)
            return "real"
        if name == "abs":
            return self._numeric(args[0], expr.span, what)
        if name in ("min", "max"):
            return numeric_result([self._numeric(a, expr.span, what) for a in args])
        if name == "nth":
            self._list(args[0], expr.span, what)
            if args[1] != "int":
                self.report("TypeMismatch", expr.span, f"index of nth must be int, got {args[1]}")
            return ANY
        if name == "cons":
            self._list(args[1], expr.span, what)
            return "list"
        self._list(args[0], expr.span, what)
        if name == "len":
            return "int"
        if name == "head":
            return ANY
        return "list"

    def _list(self, dtype: str, span: Span, what: str) -> None:
        if dtype != "list":
            self.report("TypeMismatch", span, f"{what} must be a list, got {dtype}")


def infer_type(expr: Expr, lookup: Lookup) -> str:
    """Silent dtype of an expression in an already analyzed method."""
    return ExprTyper(lookup).infer(expr)
