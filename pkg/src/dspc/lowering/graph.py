"""Executable graphs: one per module, one entry per method, one node per continuation unit.

A unit node is a chain of segments. A segment runs deterministic operations
in order and ends in a tail: the unit's generator, a `dcall` or `find` whose
continuation is the next segment, or the end of the method.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from ..errors import InternalError
from ..runtime import FAILURE, VM, Alternatives, Executable, VarCell

Op = Callable[[VM, list], bool]
Tail = Callable[[VM, list, Executable], Executable]


class CallSite:
    """A callee name; `link` maps each site to a graph or builtin per program."""

    __slots__ = ("name", "builtin")

    def __init__(self, name: str, builtin=None):
        self.name = name
        self.builtin = builtin

    def resolve(self, vm: VM):
        target = vm.links.get(self)
        if target is None:
            raise InternalError(f"call site {self.name!r} used before linking")
        return target


@dataclass
class Segment:
    ops: List[Op]
    tail: Optional[Tail] = None
    labels: List[str] = field(default_factory=list)
    tail_label: str = "return"

    def run(self, vm: VM, frame: list, cont: Executable) -> Executable:
        for op in self.ops:
            if not op(vm, frame):
                return FAILURE
        tail = self.tail
        if tail is None:
            return cont
        return tail(vm, frame, cont)


class Resume:
    """A segment bound to one activation frame."""

    __slots__ = ("segment", "frame", "cont")

    def __init__(self, segment: Segment, frame: list, cont: Executable):
        self.segment = segment
        self.frame = frame
        self.cont = cont

    def exec(self, vm: VM) -> Executable:
        return self.segment.run(vm, self.frame, self.cont)


@dataclass
class UnitNode:
    index: int
    segments: List[Segment]

    @property
    def first(self) -> Segment:
        return self.segments[0]


@dataclass
class MethodGraph:
    module: str
    index: int
    layout: Tuple[str, ...]
    n_inputs: int
    n_outputs: int
    units: List[UnitNode]

    def new_frame(self, vm: VM, ins: Sequence, outs: Sequence[VarCell]) -> list:
        frame = list(ins)
        frame.extend(outs)
        new_cell = vm.new_cell
        for _ in range(len(self.layout) - self.n_inputs - self.n_outputs):
            frame.append(new_cell())
        return frame

    def activate(self, arg) -> Executable:
        return MethodEntry(self, *arg)


class MethodEntry:
    """Method activation fused with the method's first unit."""

    __slots__ = ("method", "ins", "outs", "cont")

    def __init__(self, method: MethodGraph, ins, outs, cont: Executable):
        self.method = method
        self.ins = ins
        self.outs = outs
        self.cont = cont

    def exec(self, vm: VM) -> Executable:
        method = self.method
        frame = method.new_frame(vm, self.ins, self.outs)
        return method.units[0].first.run(vm, frame, self.cont)


@dataclass
class ExecGraph:
    name: str
    inputs: Tuple[str, ...]
    input_dtypes: Tuple[str, ...]
    outputs: Tuple[str, ...]
    output_dtypes: Tuple[str, ...]
    methods: List[MethodGraph]
    call_sites: List[CallSite] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._factories = tuple(m.activate for m in self.methods)

    def invoke(self, ins, outs, cont: Executable) -> Executable:
        if len(self._factories) == 1:
            return MethodEntry(self.methods[0], ins, outs, cont)
        return Alternatives(self._factories, (ins, outs, cont))


def format_graph(graph: ExecGraph) -> str:
    """Golden-testable dump of nodes, continuations and cell layouts."""
    lines = [f"graph {graph.name}"]
    for method in graph.methods:
        slots = []
        for slot, name in enumerate(method.layout):
            if slot < method.n_inputs:
                kind = "value"
            elif slot < method.n_inputs + method.n_outputs:
                kind = "output cell"
            else:
                kind = "cell"
            slots.append(f"{slot}:{name} ({kind})")
        lines.append(f"  method {method.index}: {len(method.units)} node(s)")
        lines.append(f"    layout {', '.join(slots)}")
        for unit in method.units:
            name = "entry" if unit.index == 1 else f"cu{unit.index}"
            for k, seg in enumerate(unit.segments):
                label = name if k == 0 else f"{name}.{k}"
                body = " ".join(seg.labels) or "-"
                lines.append(f"    {label}: {body} => {seg.tail_label}")
    return "\n".join(lines) + "\n"
