"""Names used by emitted Python modules, imported there as `rt`."""

from typing import Any, Dict

from ..models import VerifyViolation
from .cells import EMPTY, VarCell
from .engine import FAILURE, SUCCESS, VM
from .primitives import (
    Alternatives,
    BuiltinFor,
    BuiltinSelect,
    Commit,
    find_all,
    gen_for,
    gen_select,
)
from .values import (
    coerce,
    cons,
    div,
    head,
    length,
    maximum,
    minimum,
    nth,
    power,
    remove,
    sqrt,
    tail,
    truth,
)


class ClassCallee:
    """Adapts an emitted module class to the callee protocol used by `find_all`."""

    __slots__ = ("cls", "name")

    def __init__(self, cls):
        self.cls = cls
        self.name = cls.__name__

    def invoke(self, ins, outs, cont):
        return self.cls(*ins, *outs, cont)


def violation(condition: str, method: str, bindings: Dict[str, Any]) -> VerifyViolation:
    def peek(value):
        return value.value if isinstance(value, VarCell) else value

    values = {k: peek(v) for k, v in bindings.items()}
    return VerifyViolation(
        condition=condition,
        method=method,
        bindings={k: v for k, v in values.items() if v is not EMPTY},
    )


__all__ = [
    "EMPTY",
    "FAILURE",
    "SUCCESS",
    "VM",
    "Alternatives",
    "BuiltinFor",
    "BuiltinSelect",
    "ClassCallee",
    "Commit",
    "VarCell",
    "coerce",
    "cons",
    "div",
    "find_all",
    "gen_for",
    "gen_select",
    "head",
    "length",
    "maximum",
    "minimum",
    "nth",
    "power",
    "remove",
    "sqrt",
    "tail",
    "truth",
    "violation",
]
