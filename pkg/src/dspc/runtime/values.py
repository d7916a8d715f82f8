"""Runtime values and the arithmetic shared by both engines.

Values are Python objects: `float` for real, `int` for int, `bool` and
`tuple` for list. Tuples keep list values immutable once built.
"""

import math
from typing import Any, Callable, Dict, Sequence, Tuple

from ..errors import DivisionByZero, DomainFault, DtypeFault

Value = Any


def dtype_of(value: Value) -> str:
    if isinstance(value, bool):
        return "bool"
    if isinstance(value, int):
        return "int"
    if isinstance(value, float):
        return "real"
    if isinstance(value, tuple):
        return "list"
    raise DtypeFault(f"not a DSP value: {value!r}")


def coerce(value: Value, dtype: str) -> Value:
    """Check `value` against a declared dtype, promoting int to real."""
    if dtype == "real":
        if isinstance(value, float):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return float(value)
    elif dtype == "int":
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif dtype == "bool":
        if isinstance(value, bool):
            return value
    elif dtype == "list":
        if isinstance(value, tuple):
            return value
    elif dtype == "any":
        return value
    raise DtypeFault(f"expected {dtype}, got {dtype_of(value)} {value!r}")


def div(a: Value, b: Value) -> float:
    if b == 0:
        raise DivisionByZero(f"{a!r} / {b!r}")
    return a / b


def power(a: Value, b: Value) -> float:
    try:
        return math.pow(a, b)
    except ValueError:
        raise DomainFault(f"{a!r} ^ {b!r} is undefined") from None
    except OverflowError:
        raise DomainFault(f"{a!r} ^ {b!r} overflows") from None


def sqrt(x: Value) -> float:
    if x < 0:
        raise DomainFault(f"sqrt of negative number {x!r}")
    return math.sqrt(x)


def _promote(result: Value, args: Sequence[Value]) -> Value:
    if any(isinstance(a, float) for a in args):
        return float(result)
    return result


def minimum(*args: Value) -> Value:
    return _promote(min(args), args)


def maximum(*args: Value) -> Value:
    return _promote(max(args), args)


def length(items: Tuple) -> int:
    return len(items)


def head(items: Tuple) -> Value:
    if not items:
        raise DomainFault("head of empty list")
    return items[0]


def tail(items: Tuple) -> Tuple:
    if not items:
        raise DomainFault("tail of empty list")
    return items[1:]


def nth(items: Tuple, index: int) -> Value:
    if not 1 <= index <= len(items):
        raise DomainFault(f"nth index {index} outside 1..{len(items)}")
    return items[index - 1]


def cons(item: Value, items: Tuple) -> Tuple:
    return (item,) + items


def remove(items: Tuple, item: Value) -> Tuple:
    """Drop the first element equal to `item`; unchanged when absent."""
    for i, v in enumerate(items):
        if v == item:
            return items[:i] + items[i + 1:]
    return items


FUNCTIONS: Dict[str, Callable[..., Value]] = {
    "sqrt": sqrt,
    "abs": abs,
    "min": minimum,
    "max": maximum,
    "len": length,
    "head": head,
    "tail": tail,
    "nth": nth,
    "cons": cons,
    "remove": remove,
}

BINARY: Dict[str, Callable[[Value, Value], Value]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": div,
    "^": power,
    "=<": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "=": lambda a, b: a == b,
    "\\=": lambda a, b: a != b,
}


def truth(value: Value, where: str = "condition") -> bool:
    if not isinstance(value, bool):
        raise DtypeFault(f"{where} is {dtype_of(value)}, not bool")
    return value
