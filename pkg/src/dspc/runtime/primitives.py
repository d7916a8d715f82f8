"""Generators, module alternatives, deterministic calls and all-solutions collection.

A callee is anything with `invoke(ins, outs, cont) -> Executable`: a lowered
module graph, an emitted module class wrapper or one of the builtin
generators below.
"""

from typing import Callable, List, Protocol, Sequence, Tuple

from ..errors import CommitDepthFault, DtypeFault, NonPositiveStep
from .cells import EMPTY, VarCell
from .engine import FAILURE, VM, Executable
from .values import Value, coerce


class Callee(Protocol):
    name: str

    def invoke(self, ins: Sequence[Value], outs: Sequence[VarCell], cont: Executable) -> Executable:
        ...


# for

def for_bound(end: Value, step: Value, eps: float) -> Value:
    if step <= 0:
        raise NonPositiveStep(f"for step {step!r} is not positive")
    if isinstance(end, float):
        return end + eps * max(1.0, abs(end))
    return end


class ForNext:
    __slots__ = ("value", "bound", "step", "out", "cont")

    def __init__(self, value, bound, step, out: VarCell, cont: Executable):
        self.value = value
        self.bound = bound
        self.step = step
        self.out = out
        self.cont = cont

    def exec(self, vm: VM) -> Executable:
        value = self.value
        self.out.value = value
        nxt = value + self.step
        if nxt <= self.bound:
            self.value = nxt
            vm.push(self)
        return self.cont


def gen_for(vm: VM, begin, end, step, out: VarCell, cont: Executable) -> Executable:
    """Enumerate begin, begin+step, ... up to end; int bounds stay exact."""
    bound = for_bound(end, step, vm.for_epsilon)
    if begin > bound:
        return FAILURE
    out.value = begin
    nxt = begin + step
    if nxt <= bound:
        vm.push(ForNext(nxt, bound, step, out, cont))
    return cont


# select

class SelectNext:
    __slots__ = ("items", "index", "out", "cont")

    def __init__(self, items: Tuple, index: int, out: VarCell, cont: Executable):
        self.items = items
        self.index = index
        self.out = out
        self.cont = cont

    def exec(self, vm: VM) -> Executable:
        i = self.index
        self.out.value = self.items[i]
        if i + 1 < len(self.items):
            self.index = i + 1
            vm.push(self)
        return self.cont


def gen_select(vm: VM, items, out: VarCell, cont: Executable, dtype: str = "any") -> Executable:
    """Enumerate list elements left to right; the last one leaves no choice point."""
    if not isinstance(items, tuple):
        raise DtypeFault(f"select needs a list, got {items!r}")
    if dtype != "any":
        items = tuple(coerce(v, dtype) for v in items)
    if not items:
        return FAILURE
    out.value = items[0]
    if len(items) > 1:
        vm.push(SelectNext(items, 1, out, cont))
    return cont


class _Start:
    __slots__ = ("run",)

    def __init__(self, run: Callable[[VM], Executable]):
        self.run = run

    def exec(self, vm: VM) -> Executable:
        return self.run(vm)


class BuiltinFor:
    """`for` as a call target; `real` converts all three inputs to float."""

    name = "for"

    def __init__(self, real: bool = False):
        self.real = real

    def invoke(self, ins, outs, cont):
        b, e, s = (float(v) for v in ins) if self.real else ins
        out = outs[0]
        return _Start(lambda vm: gen_for(vm, b, e, s, out, cont))


class BuiltinSelect:
    name = "select"

    def __init__(self, dtype: str = "any"):
        self.dtype = dtype

    def invoke(self, ins, outs, cont):
        items, out = ins[0], outs[0]
        return _Start(lambda vm: gen_select(vm, items, out, cont, self.dtype))


# module alternatives

class Alternatives:
    """Tries `factories[index](arg)`, leaving the remaining methods as a choice point."""

    __slots__ = ("factories", "arg", "index")

    def __init__(self, factories: Sequence[Callable], arg, index: int = 0):
        self.factories = factories
        self.arg = arg
        self.index = index

    def exec(self, vm: VM) -> Executable:
        i = self.index
        if i + 1 < len(self.factories):
            vm.push(Alternatives(self.factories, self.arg, i + 1))
        return self.factories[i](self.arg)


def call_module(callee: Callee, ins, outs, cont: Executable) -> Executable:
    return callee.invoke(ins, outs, cont)


# dcall

class Commit:
    """Continuation of a deterministic call: cut back to the entry depth, then go on."""

    __slots__ = ("depth", "cont")

    def __init__(self, depth: int, cont: Executable):
        self.depth = depth
        self.cont = cont

    def exec(self, vm: VM) -> Executable:
        if vm.audit and vm.depth < self.depth:
            raise CommitDepthFault(
                f"stack depth {vm.depth} is below the dcall entry depth {self.depth}"
            )
        vm.cut(self.depth)
        vm.commits += 1
        return self.cont


def dcall_module(vm: VM, callee: Callee, ins, outs, cont: Executable) -> Executable:
    return callee.invoke(ins, outs, Commit(vm.depth, cont))


# find

class FindFinish:
    """Barrier choice point resumed once the callee is exhausted."""

    __slots__ = ("mark", "results", "found", "target", "cont")

    def __init__(self, mark: int, target: VarCell, cont: Executable):
        self.mark = mark
        self.results: List = []
        self.found: List = []
        self.target = target
        self.cont = cont

    def exec(self, vm: VM) -> Executable:
        self.target.value = tuple(self.results)
        vm.violations.extend(self.found)
        return self.cont


class Collect:
    __slots__ = ("cells", "finish")

    def __init__(self, cells: Sequence[VarCell], finish: FindFinish):
        self.cells = cells
        self.finish = finish

    def exec(self, vm: VM) -> Executable:
        finish = self.finish
        values = tuple(c.value for c in self.cells)
        if any(v is EMPTY for v in values):
            raise DtypeFault("find callee succeeded without binding its outputs")
        finish.results.append(values[0] if len(values) == 1 else values)
        finish.found.extend(vm.violations[finish.mark:])
        return FAILURE


def find_all(
    vm: VM, callee: Callee, ins, n_outputs: int, target: VarCell, cont: Executable
) -> Executable:
    """Drain `callee` behind a barrier and bind the ordered solutions to `target`."""
    finish = FindFinish(len(vm.violations), target, cont)
    vm.push(finish)
    cells = [vm.new_cell() for _ in range(n_outputs)]
    return callee.invoke(ins, cells, Collect(cells, finish))

