"""The inference engine: executables, choice points and the call/redo loop."""

from typing import Any, Dict, List, Optional, Protocol, runtime_checkable

from ..config import Settings, get_settings
from ..models import EngineStats, VerifyViolation
from .cells import AuditedVarCell, StaleLog, VarCell


@runtime_checkable
class Executable(Protocol):
    def exec(self, vm: "VM") -> "Executable":
        ...


class Terminal:
    """SUCCESS and FAILURE sentinels returned by `exec`."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def exec(self, vm: "VM") -> "Executable":
        return self

    def __repr__(self) -> str:
        return self.name


SUCCESS = Terminal("SUCCESS")
FAILURE = Terminal("FAILURE")


class VM:
    """Choice-point stack machine.

    `call` drives a goal until it reaches SUCCESS or the stack runs out;
    FAILURE resumes the most recent choice point. Every choice point keeps
    the length of the violation log at push time and popping it truncates
    the log, so `violations` always describes the current path.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.for_epsilon = self.settings.for_epsilon
        self.audit = self.settings.audit_cells
        self.choicepoints: List[Executable] = []
        self.marks: List[int] = []
        self.violations: List[VerifyViolation] = []
        self.exec_steps = 0
        self.pushes = 0
        self.pops = 0
        self.peak_depth = 0
        self.commits = 0
        self.solutions = 0
        self.clock = 0
        self.stale = StaleLog()
        self._clocks: List[int] = []
        # call site -> callee, installed by the linked program being run
        self.links: Dict[Any, Any] = {}

    # Cells

    def new_cell(self) -> VarCell:
        return AuditedVarCell(self) if self.audit else VarCell()

    # Choice points

    @property
    def depth(self) -> int:
        return len(self.choicepoints)

    def push(self, goal: Executable) -> None:
        self.choicepoints.append(goal)
        self.marks.append(len(self.violations))
        if self.audit:
            self._clocks.append(self.clock)
        self.pushes += 1
        if len(self.choicepoints) > self.peak_depth:
            self.peak_depth = len(self.choicepoints)

    def pop(self) -> Optional[Executable]:
        if not self.choicepoints:
            return None
        self.pops += 1
        del self.violations[self.marks.pop():]
        if self.audit:
            self.stale.add(self._clocks.pop(), self.clock)
        return self.choicepoints.pop()

    def cut(self, depth: int) -> None:
        """Drop every choice point above `depth`."""
        del self.choicepoints[depth:]
        del self.marks[depth:]
        if self.audit:
            del self._clocks[depth:]

    def violate(self, violation: VerifyViolation) -> None:
        self.violations.append(violation)

    # Driving

    def call(self, goal: Optional[Executable]) -> bool:
        steps = 0
        try:
            while goal is not None:
                goal = goal.exec(self)
                steps += 1
                if goal is SUCCESS:
                    self.solutions += 1
                    return True
                if goal is FAILURE:
                    goal = self.pop()
            return False
        finally:
            self.exec_steps += steps

    def redo(self) -> bool:
        return self.call(self.pop())

    def reset(self) -> None:
        self.cut(0)
        self.violations.clear()

    def stats(self) -> EngineStats:
        return EngineStats(
            exec_steps=self.exec_steps,
            pushes=self.pushes,
            pops=self.pops,
            peak_depth=self.peak_depth,
            commits=self.commits,
            solutions=self.solutions,
        )


def vm_call(vm: VM, goal: Executable) -> bool:
    return vm.call(goal)


def vm_redo(vm: VM) -> bool:
    return vm.redo()
