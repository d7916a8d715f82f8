"""Variable cells.

Cells are overwritten freely when a resumed path re-executes a statement and
are never restored on backtracking. Audited cells additionally stamp every
write with the VM clock so a read of a value left behind by an abandoned
branch is caught.
"""

from bisect import bisect_right
from typing import TYPE_CHECKING, List, Tuple

from ..errors import EmptyCellRead, StaleCellRead

if TYPE_CHECKING:
    from .engine import VM


class _Empty:
    __slots__ = ()

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = _Empty()


class VarCell:
    __slots__ = ("value",)

    def __init__(self) -> None:
        self.value = EMPTY

    def get(self):
        value = self.value
        if value is EMPTY:
            raise EmptyCellRead("read of an unbound variable")
        return value

    def set(self, value) -> None:
        self.value = value

    def __repr__(self) -> str:
        return f"VarCell({self.value!r})"


class StaleLog:
    """Disjoint, sorted clock intervals whose writes were abandoned by backtracking."""

    def __init__(self) -> None:
        self.starts: List[int] = []
        self.ends: List[int] = []

    def add(self, start: int, end: int) -> None:
        if start >= end:
            return
        while self.ends and self.ends[-1] >= start:
            start = min(start, self.starts.pop())
            self.ends.pop()
        self.starts.append(start)
        self.ends.append(end)

    def __contains__(self, stamp: int) -> bool:
        # intervals are half-open on the left: (start, end]
        k = bisect_right(self.starts, stamp - 1) - 1
        return k >= 0 and self.starts[k] < stamp <= self.ends[k]

    def intervals(self) -> List[Tuple[int, int]]:
        return list(zip(self.starts, self.ends))


class AuditedVarCell(VarCell):
    __slots__ = ("_value", "stamp", "vm")

    def __init__(self, vm: "VM") -> None:
        self.vm = vm
        self.stamp = 0
        self._value = EMPTY

    @property  # type: ignore[override]
    def value(self):
        if self._value is not EMPTY and self.stamp in self.vm.stale:
            raise StaleCellRead(
                f"value {self._value!r} was written on a branch that has been backtracked"
            )
        return self._value

    @value.setter
    def value(self, value) -> None:
        self.vm.clock += 1
        self.stamp = self.vm.clock
        self._value = value
