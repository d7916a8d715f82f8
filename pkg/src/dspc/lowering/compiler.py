"""Lowering of scheduled modules to executable graphs, and linking."""

import logging
from collections import Counter
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..analyzer import infer_type
from ..errors import EmptyCellRead, InternalError, LinkError
from ..frontend.ast import (
    Bind,
    Call,
    Expr,
    Find,
    ForGen,
    ModuleDecl,
    SelectGen,
    Stmt,
    Tester,
    stmt_defines,
)
from ..frontend.printer import format_expr, format_stmt
from ..models import VerifyViolation
from ..runtime import (
    EMPTY,
    VM,
    BuiltinFor,
    BuiltinSelect,
    Commit,
    Executable,
    coerce,
    find_all,
    gen_for,
    gen_select,
    truth,
)
from ..runtime.expr import Compiled, compile_expr
from ..scheduler import ContinuationUnit, ScheduledMethod, ScheduledModule
from .graph import CallSite, ExecGraph, MethodGraph, Op, Resume, Segment, Tail, UnitNode

logger = logging.getLogger(__name__)


def _unit_name(index: int) -> str:
    return "entry" if index == 1 else f"cu{index}"


def _resume(segment: Optional[Segment]):
    """Continuation factory: resume `segment` in the frame, or return to the caller."""
    if segment is None:
        return lambda frame, cont: cont
    return lambda frame, cont: Resume(segment, frame, cont)


class MethodLowering:
    def __init__(self, module: ModuleDecl, method: ScheduledMethod, registry: Mapping[str, ModuleDecl]):
        self.module = module
        self.method = method
        self.registry = registry
        self.symbols = method.analyzed.symbols
        self.statements = method.analyzed.statements
        self.where = f"{module.name}/{method.index}"
        inputs = [p.name for p in module.inputs]
        outputs = [p.name for p in module.outputs]
        local = [s.name for s in self.symbols.locals() if not s.is_output]
        self.layout: Tuple[str, ...] = tuple(inputs + outputs + local)
        self.slot = {name: i for i, name in enumerate(self.layout)}
        self.n_inputs = len(inputs)
        self.call_sites: List[CallSite] = []

    # Expressions

    def read(self, name: str) -> Compiled:
        i = self.slot[name]
        if i < self.n_inputs:
            return lambda frame: frame[i]
        where = self.where

        def read_cell(frame):
            value = frame[i].value
            if value is EMPTY:
                raise EmptyCellRead(f"{name} read before it was bound", where)
            return value

        return read_cell

    def expr(self, expr: Expr, target: Optional[str] = None) -> Compiled:
        fn = compile_expr(expr, self.read)
        if target is None:
            return fn
        got = infer_type(expr, self.symbols.dtype)
        if got == target:
            return fn
        if got == "int" and target == "real":
            return lambda frame: float(fn(frame))
        return lambda frame: coerce(fn(frame), target)

    # Statements

    def op(self, node: int) -> Op:
        stmt = self.statements[node]
        if isinstance(stmt, Bind):
            fn = self.expr(stmt.rhs, stmt.dtype)
            slot = self.slot[stmt.target]

            def bind(vm, frame):
                frame[slot].value = fn(frame)
                return True

            return bind
        if not isinstance(stmt, Tester):
            raise InternalError(f"{stmt.kind} cannot run inside a segment")
        cond = self.expr(stmt.cond)
        if stmt.op != "verify":
            if infer_type(stmt.cond, self.symbols.dtype) == "bool":
                return lambda vm, frame: cond(frame)
            return lambda vm, frame: truth(cond(frame))
        return self.verify_op(node, stmt, cond)

    def verify_op(self, node: int, stmt: Tester, cond: Compiled) -> Op:
        text = format_expr(stmt.cond)
        where = self.where
        scope = [(name, self.slot[name]) for name in self.method.scope(node)]
        n_inputs = self.n_inputs

        def verify(vm, frame):
            if not truth(cond(frame)):
                bindings = {}
                for name, slot in scope:
                    value = frame[slot] if slot < n_inputs else frame[slot].value
                    if value is not EMPTY:
                        bindings[name] = value
                vm.violate(VerifyViolation(condition=text, method=where, bindings=bindings))
            return True

        return verify

    def site(self, callee: str, builtin=None) -> CallSite:
        site = CallSite(callee, None if callee in self.registry else builtin)
        self.call_sites.append(site)
        return site

    def inputs(self, callee: str, exprs: Sequence[Expr]) -> List[Compiled]:
        decl = self.registry.get(callee)
        if decl is None:
            return [self.expr(e) for e in exprs]
        return [self.expr(e, p.dtype) for e, p in zip(exprs, decl.inputs)]

    def builtin(self, callee: str, exprs: Sequence[Expr], out_dtype: str):
        if callee == "for":
            if out_dtype in ("int", "real"):
                real = out_dtype == "real"
            else:
                real = any(infer_type(e, self.symbols.dtype) != "int" for e in exprs)
            return BuiltinFor(real)
        if callee == "select":
            return BuiltinSelect(out_dtype)
        return None

    def generator_tail(self, stmt: Stmt, following: Optional[Segment]) -> Tail:
        resume = _resume(following)
        if isinstance(stmt, Bind) and isinstance(stmt.rhs, ForGen):
            target = "real" if stmt.dtype == "real" else None
            begin, end, step = (self.expr(e, target) for e in (stmt.rhs.begin, stmt.rhs.end, stmt.rhs.step))
            slot = self.slot[stmt.target]
            return lambda vm, frame, cont: gen_for(
                vm, begin(frame), end(frame), step(frame), frame[slot], resume(frame, cont)
            )
        if isinstance(stmt, Bind) and isinstance(stmt.rhs, SelectGen):
            source = self.expr(stmt.rhs.source)
            slot = self.slot[stmt.target]
            dtype = stmt.dtype
            return lambda vm, frame, cont: gen_select(
                vm, source(frame), frame[slot], resume(frame, cont), dtype
            )
        if isinstance(stmt, Call):
            site, ins, outs = self.call_parts(stmt)
            return lambda vm, frame, cont: site.resolve(vm).invoke(
                [f(frame) for f in ins], [frame[i] for i in outs], resume(frame, cont)
            )
        raise InternalError(f"{stmt.kind} is not a generator")

    def call_parts(self, stmt: Call):
        out_dtype = self.symbols.dtype(stmt.outputs[0]) if stmt.outputs else "any"
        site = self.site(stmt.callee, self.builtin(stmt.callee, stmt.inputs, out_dtype))
        return site, self.inputs(stmt.callee, stmt.inputs), [self.slot[n] for n in stmt.outputs]

    def splitter_tail(self, stmt: Stmt, following: Segment) -> Tail:
        if isinstance(stmt, Call):
            site, ins, outs = self.call_parts(stmt)
            return lambda vm, frame, cont: site.resolve(vm).invoke(
                [f(frame) for f in ins],
                [frame[i] for i in outs],
                Commit(vm.depth, Resume(following, frame, cont)),
            )
        if isinstance(stmt, Find):
            decl = self.registry.get(stmt.callee)
            n_outputs = len(decl.outputs) if decl is not None else 1
            site = self.site(stmt.callee, self.builtin(stmt.callee, stmt.inputs, "any"))
            ins = self.inputs(stmt.callee, stmt.inputs)
            slot = self.slot[stmt.target]
            return lambda vm, frame, cont: find_all(
                vm, site.resolve(vm), [f(frame) for f in ins], n_outputs, frame[slot],
                Resume(following, frame, cont),
            )
        raise InternalError(f"{stmt.kind} does not split a unit")

    # Units

    def lower_unit(self, unit: ContinuationUnit, following: Optional[Segment], last: bool) -> UnitNode:
        pieces: List[Tuple[List[int], Optional[int]]] = []
        current: List[int] = []
        for n in unit.prefix:
            stmt = self.statements[n]
            if isinstance(stmt, Find) or (isinstance(stmt, Call) and stmt.op == "dcall"):
                pieces.append((current, n))
                current = []
            else:
                current.append(n)
        pieces.append((current, unit.trailing_generator))

        name = _unit_name(unit.index)
        after = "caller" if last else _unit_name(unit.index + 1)
        segments: List[Optional[Segment]] = [None] * len(pieces)
        for k in reversed(range(len(pieces))):
            nodes, tail_node = pieces[k]
            seg = Segment(
                ops=[self.op(n) for n in nodes],
                labels=[format_stmt(self.statements[n]) for n in nodes],
            )
            if k == len(pieces) - 1:
                if tail_node is not None:
                    seg.tail = self.generator_tail(self.statements[tail_node], following)
                    seg.tail_label = f"{format_stmt(self.statements[tail_node])} -> {after}"
                elif following is not None:
                    raise InternalError(f"unit {name} of {self.where} has no generator")
            else:
                nxt = segments[k + 1]
                assert nxt is not None
                seg.tail = self.splitter_tail(self.statements[tail_node], nxt)
                seg.tail_label = f"{format_stmt(self.statements[tail_node])} -> {name}.{k + 1}"
            segments[k] = seg
        return UnitNode(unit.index, [s for s in segments if s is not None])

    def lower(self) -> MethodGraph:
        units = self.method.units
        nodes: List[UnitNode] = []
        following: Optional[Segment] = None
        for unit in reversed(units):
            node = self.lower_unit(unit, following, last=unit is units[-1])
            nodes.append(node)
            following = node.first
        nodes.reverse()
        if len(nodes) != len(units):
            raise InternalError(f"{self.where}: node count differs from unit count")
        writers = Counter(n for s in self.statements for n in stmt_defines(s))
        for name in self.layout[self.n_inputs:]:
            if writers[name] != 1:
                raise InternalError(f"{self.where}: slot {name} has {writers[name]} writers")
        return MethodGraph(
            self.module.name, self.method.index, self.layout, self.n_inputs,
            len(self.module.outputs), nodes,
        )


def lower(scheduled: ScheduledModule, registry: Optional[Mapping[str, ModuleDecl]] = None) -> ExecGraph:
    """Compile one scheduled module; `registry` supplies callee signatures."""
    decl = scheduled.decl
    registry = dict(registry or {})
    registry.setdefault(decl.name, decl)
    methods = []
    sites: List[CallSite] = []
    for method in scheduled.methods:
        lowering = MethodLowering(decl, method, registry)
        methods.append(lowering.lower())
        sites.extend(lowering.call_sites)
    logger.debug("lowered module %s: %d method(s), %d call site(s)",
                 decl.name, len(methods), len(sites))
    return ExecGraph(
        decl.name,
        tuple(p.name for p in decl.inputs),
        tuple(p.dtype for p in decl.inputs),
        tuple(p.name for p in decl.outputs),
        tuple(p.dtype for p in decl.outputs),
        methods,
        sites,
    )


class LinkedProgram:
    """Graphs plus the binding of every call site to a graph or builtin generator.

    Graphs are never mutated by linking, so one graph may take part in
    several linked programs. The bindings reach the call sites through the
    VM that runs the program.
    """

    def __init__(self, graphs: Dict[str, ExecGraph], links: Dict[CallSite, object]):
        self.graphs = graphs
        self.links = links

    def __getitem__(self, name: str) -> ExecGraph:
        return self.graphs[name]

    def __contains__(self, name: object) -> bool:
        return name in self.graphs

    @property
    def names(self) -> List[str]:
        return list(self.graphs)

    def invoke(self, vm: VM, name: str, ins, outs, cont: Executable) -> Executable:
        vm.links = self.links
        return self.graphs[name].invoke(ins, outs, cont)


def link(graphs: Iterable[ExecGraph]) -> LinkedProgram:
    table = {g.name: g for g in graphs}
    missing = {
        site.name
        for g in table.values()
        for site in g.call_sites
        if site.name not in table and site.builtin is None
    }
    if missing:
        raise LinkError(missing)
    links = {
        site: table.get(site.name) or site.builtin
        for g in table.values()
        for site in g.call_sites
    }
    logger.debug("linked %d module(s)", len(table))
    return LinkedProgram(table, links)
