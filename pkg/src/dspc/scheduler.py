"""Total ordering of method statements and continuation-unit partitioning.

Selection rule, applied until every statement is placed:

1. the source-earliest ready deterministic statement other than `verify`;
2. otherwise the source-earliest unplaced generator when it is ready, or else
   the source-earliest ready generator among its ancestors;
3. `verify` statements close the order in source order.

Rule 1 moves calculators and testers forward as far as their inputs allow,
rule 2 keeps generators in their source order whenever the graph permits it.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .analyzer import AnalyzedMethod, AnalyzedModule, DepGraph, StmtClass
from .frontend.ast import Tester, stmt_defines
from .frontend.printer import format_stmt
from .errors import InternalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContinuationUnit:
    index: int  # 1-based within the method
    stmts: Tuple[int, ...]
    trailing_generator: Optional[int] = None

    @property
    def prefix(self) -> Tuple[int, ...]:
        """Deterministic statements run before the trailing generator."""
        if self.trailing_generator is None:
            return self.stmts
        return self.stmts[:-1]


def total_order(
    graph: DepGraph,
    source_order: Optional[Sequence[int]] = None,
    verify: Sequence[int] = (),
) -> Tuple[int, ...]:
    """Stable topological order of a method's statements; `verify` lists verify nodes."""
    nodes = list(source_order) if source_order is not None else list(range(graph.size))
    rank = {n: k for k, n in enumerate(nodes)}
    preds = {n: set(graph.predecessors(n)) for n in nodes}
    late = set(verify)
    placed: List[int] = []
    done: set = set()

    def ready(n: int) -> bool:
        return n not in done and preds[n] <= done

    while len(placed) < len(nodes):
        pending = [n for n in nodes if n not in done]
        choice = next(
            (n for n in pending
             if n not in late and not graph.is_generator(n) and ready(n)),
            None,
        )
        if choice is None:
            gens = [n for n in pending if graph.is_generator(n)]
            if gens:
                first = gens[0]
                if ready(first):
                    choice = first
                else:
                    choice = next(
                        (a for a in sorted(graph.ancestors(first), key=rank.__getitem__)
                         if graph.is_generator(a) and ready(a)),
                        None,
                    )
        if choice is None:
            choice = next((n for n in pending if n in late and ready(n)), None)
        if choice is None:
            raise InternalError("dependency graph has a cycle at scheduling time")
        placed.append(choice)
        done.add(choice)
    return tuple(placed)


def partition_units(order: Sequence[int], classes: Sequence[StmtClass]) -> Tuple[ContinuationUnit, ...]:
    """Greedy split: every generator closes the unit it ends."""
    units: List[ContinuationUnit] = []
    current: List[int] = []
    for node in order:
        current.append(node)
        if classes[node] is StmtClass.GENERATOR:
            units.append(ContinuationUnit(len(units) + 1, tuple(current), node))
            current = []
    if current or not units:
        units.append(ContinuationUnit(len(units) + 1, tuple(current)))
    return tuple(units)


@dataclass(frozen=True)
class ScheduledMethod:
    analyzed: AnalyzedMethod
    order: Tuple[int, ...]
    units: Tuple[ContinuationUnit, ...]

    @property
    def index(self) -> int:
        return self.analyzed.index

    def scope(self, node: int) -> Tuple[str, ...]:
        """Variables bound before `node` runs: inputs, then earlier statements' targets."""
        names = [s.name for s in self.analyzed.symbols.inputs()]
        for n in self.order:
            if n == node:
                break
            names.extend(stmt_defines(self.analyzed.statements[n]))
        return tuple(names)


@dataclass(frozen=True)
class ScheduledModule:
    analyzed: AnalyzedModule
    methods: Tuple[ScheduledMethod, ...]

    @property
    def name(self) -> str:
        return self.analyzed.name

    @property
    def decl(self):
        return self.analyzed.decl


def schedule_method(method: AnalyzedMethod) -> ScheduledMethod:
    verify = [i for i, s in enumerate(method.statements)
              if isinstance(s, Tester) and s.op == "verify"]
    order = total_order(method.graph, verify=verify)
    units = partition_units(order, method.graph.classes)
    if tuple(n for u in units for n in u.stmts) != order:
        raise InternalError(f"units of method {method.index} do not cover its order")
    return ScheduledMethod(method, order, units)


def schedule(module: AnalyzedModule) -> ScheduledModule:
    methods = tuple(schedule_method(m) for m in module.methods)
    logger.debug("scheduled module %s: %s", module.name,
                 ", ".join(f"method {m.index} -> {len(m.units)} unit(s)" for m in methods))
    return ScheduledModule(module, methods)


def schedule_program(modules: Dict[str, AnalyzedModule]) -> Dict[str, ScheduledModule]:
    return {name: schedule(m) for name, m in modules.items()}


def format_schedule(module: ScheduledModule) -> str:
    """Golden-testable dump of orders and unit boundaries, statements numbered from 1."""
    lines = [f"module {module.name}"]
    for method in module.methods:
        order = " ".join(str(n + 1) for n in method.order)
        lines.append(f"  method {method.index}: order {order}")
        for unit in method.units:
            label = f"cu{unit.index}"
            for n in unit.stmts:
                mark = "  <- generator" if n == unit.trailing_generator else ""
                stmt = format_stmt(method.analyzed.statements[n])
                lines.append(f"    {label:<5}[{n + 1}] {stmt}{mark}")
                label = ""
    return "\n".join(lines) + "\n"
