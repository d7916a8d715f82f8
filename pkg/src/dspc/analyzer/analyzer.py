"""Name resolution, single assignment, typing and dependency analysis."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import AnalysisError
from ..frontend.ast import (
    Bind,
    Call,
    Expr,
    Find,
    ForGen,
    MethodDecl,
    ModuleDecl,
    SelectGen,
    Span,
    Stmt,
    Tester,
    stmt_defines,
    stmt_reads,
)
from ..frontend.printer import format_expr
from ..models import Diagnostic
from .graph import DepGraph, build_graph
from .symbols import Symbol, SymbolTable
from .types import ANY, NUMERIC, ExprTyper, assignable, numeric_result

logger = logging.getLogger(__name__)

# Builtin generators usable as call/dcall/find targets: name -> (inputs, outputs)
BUILTIN_CALLEES: Dict[str, Tuple[int, int]] = {"for": (3, 1), "select": (1, 1)}

WARNING_CODES = ("UnusedVariable", "RealEquality")


@dataclass(frozen=True)
class AnalyzedMethod:
    index: int  # 1-based, as in unit names
    decl: MethodDecl
    symbols: SymbolTable
    graph: DepGraph

    @property
    def statements(self) -> Tuple[Stmt, ...]:
        return self.decl.statements


@dataclass(frozen=True)
class AnalyzedModule:
    decl: ModuleDecl
    methods: Tuple[AnalyzedMethod, ...]
    warnings: Tuple[Diagnostic, ...] = field(default=(), compare=False)

    @property
    def name(self) -> str:
        return self.decl.name


def resolve_callee(name: str, registry: Mapping[str, ModuleDecl]) -> Optional[str]:
    """'module', 'builtin' or None. Modules shadow builtins of the same name."""
    if name in registry:
        return "module"
    if name in BUILTIN_CALLEES:
        return "builtin"
    return None


class Analyzer:
    """Collects diagnostics over a batch of modules."""

    def __init__(self, registry: Mapping[str, ModuleDecl]):
        self.registry = registry
        self.diagnostics: List[Diagnostic] = []
        self._module: Optional[ModuleDecl] = None

    def report(self, code: str, span: Span, message: str) -> None:
        file = (self._module.file if self._module else None) or "<input>"
        severity = "warning" if code in WARNING_CODES else "error"
        diag = Diagnostic(file=file, line=span.line, col=span.col,
                          severity=severity, code=code, message=message)
        if severity == "warning":
            logger.warning(diag.render())
        self.diagnostics.append(diag)

    def analyze_module(self, module: ModuleDecl) -> AnalyzedModule:
        self._module = module
        start = len(self.diagnostics)
        methods = tuple(
            self.analyze_method(module, i + 1, m) for i, m in enumerate(module.methods)
        )
        warnings = tuple(d for d in self.diagnostics[start:] if d.severity == "warning")
        logger.debug("analyzed module %s", module.name)
        return AnalyzedModule(module, methods, warnings)

    # Methods

    def analyze_method(self, module: ModuleDecl, index: int, method: MethodDecl) -> AnalyzedMethod:
        outputs = {p.name: p for p in module.outputs}
        symbols = SymbolTable()
        for p in module.inputs:
            symbols.add(Symbol(p.name, p.dtype))

        definers: Dict[str, int] = {}
        pending_for: List[Tuple[int, str]] = []
        for i, stmt in enumerate(method.statements):
            for pos, name in enumerate(stmt_defines(stmt)):
                prior = symbols.get(name)
                if prior is not None:
                    where = "an input" if prior.stmt is None else f"already bound by {prior.origin}"
                    self.report("DoubleAssignment", stmt.span,
                                f"variable {name!r} is {where}")
                    continue
                dtype = self._defined_dtype(stmt, pos, name, outputs)
                if dtype is None:
                    pending_for.append((i, name))
                    dtype = "real"
                symbols.add(Symbol(name, dtype, i, name in outputs))
                definers[name] = i
        self._settle_for_outputs(method, symbols, pending_for)

        typer = ExprTyper(symbols.dtype, self.report)
        for stmt in method.statements:
            self.check_stmt(stmt, symbols, typer, outputs)

        for name in outputs:
            sym = symbols.get(name)
            if sym is None or sym.stmt is None:
                self.report("MissingOutput", method.span,
                            f"method {index} of {module.name} never binds output {name!r}")

        reads = [stmt_reads(s) for s in method.statements]
        read_names = {n for r in reads for n in r}
        for sym in symbols.locals():
            if not sym.is_output and sym.name not in read_names:
                stmt = method.statements[sym.stmt]
                self.report("UnusedVariable", stmt.span, f"variable {sym.name!r} is never read")

        graph = build_graph(method.statements, definers, reads)
        cycle = graph.find_cycle()
        if cycle is not None:
            path = " -> ".join(str(n + 1) for n in cycle + cycle[:1])
            self.report("CyclicDependency", method.statements[cycle[0]].span,
                        f"statements {path} of method {index} depend on each other")
        return AnalyzedMethod(index, method, symbols, graph)

    def _defined_dtype(self, stmt: Stmt, pos: int, name: str, outputs) -> Optional[str]:
        if isinstance(stmt, Bind):
            return stmt.dtype
        if isinstance(stmt, Find):
            return "list"
        kind = resolve_callee(stmt.callee, self.registry)
        if kind == "module":
            callee = self.registry[stmt.callee]
            if pos < len(callee.outputs):
                return callee.outputs[pos].dtype
            return ANY
        if name in outputs:
            return outputs[name].dtype
        if stmt.callee == "for":
            return None
        return ANY

    def _settle_for_outputs(self, method, symbols: SymbolTable, pending) -> None:
        # builtin for through call/dcall: int only when every bound is int
        changed = True
        while pending and changed:
            changed = False
            unsettled = {name for _, name in pending}
            for i, name in list(pending):
                stmt = method.statements[i]
                if unsettled.intersection(stmt_reads(stmt)):
                    continue
                types = [ExprTyper(symbols.dtype).infer(e) for e in stmt.inputs]
                symbols.add(Symbol(name, numeric_result(types), i, False))
                pending.remove((i, name))
                changed = True

    # Statements

    def check_stmt(self, stmt: Stmt, symbols: SymbolTable, typer: ExprTyper, outputs) -> None:
        if isinstance(stmt, Tester):
            dtype = typer(stmt.cond)
            if dtype not in ("bool", ANY):
                self.report("TypeMismatch", stmt.cond.span,
                            f"{stmt.op} condition must be bool, got {dtype}")
            return
        if isinstance(stmt, Bind):
            out = outputs.get(stmt.target)
            if out is not None and out.dtype != stmt.dtype:
                self.report("TypeMismatch", stmt.span,
                            f"{stmt.target} is bound as {stmt.dtype} but output {stmt.target!r} is {out.dtype}")
            self._check_bind(stmt, typer)
            return
        inputs = [typer(e) for e in stmt.inputs]
        kind = resolve_callee(stmt.callee, self.registry)
        if kind is None:
            self.report("UnknownModule", stmt.span, f"unknown module {stmt.callee!r}")
            return
        if kind == "builtin":
            n_in, n_out = BUILTIN_CALLEES[stmt.callee]
            params = ["numeric"] * 3 if stmt.callee == "for" else ["list"]
        else:
            callee = self.registry[stmt.callee]
            n_in, n_out = len(callee.inputs), len(callee.outputs)
            params = [p.dtype for p in callee.inputs]
        n_out_given = len(stmt.outputs) if isinstance(stmt, Call) else n_out
        if len(inputs) != n_in or n_out_given != n_out:
            self.report("ArityMismatch", stmt.span,
                        f"{stmt.callee} takes {n_in} input(s) and {n_out} output(s), "
                        f"got {len(inputs)} and {n_out_given}")
            return
        for expr, got, want in zip(stmt.inputs, inputs, params):
            self._check_input(stmt.callee, expr, got, want)
        if isinstance(stmt, Find):
            out = outputs.get(stmt.target)
            if out is not None and out.dtype != "list":
                self.report("TypeMismatch", stmt.span,
                            f"find binds a list but output {stmt.target!r} is {out.dtype}")
            return
        for pos, name in enumerate(stmt.outputs):
            out = outputs.get(name)
            if out is None:
                continue
            if kind == "module":
                got = self.registry[stmt.callee].outputs[pos].dtype
                if got != out.dtype:
                    self.report("TypeMismatch", stmt.span,
                                f"{stmt.callee} returns {got} but output {name!r} is {out.dtype}")
            elif stmt.callee == "for":
                self._check_for_target(stmt.span, inputs, out.dtype)

    def _check_input(self, callee: str, expr: Expr, got: str, want: str) -> None:
        if want == "numeric":
            ok = got in NUMERIC or got == ANY
        else:
            ok = assignable(got, want)
        if not ok:
            self.report("TypeMismatch", expr.span,
                        f"input {format_expr(expr)} of {callee} is {got}, expected {want}")

    def _check_bind(self, stmt: Bind, typer: ExprTyper) -> None:
        rhs = stmt.rhs
        if isinstance(rhs, ForGen):
            types = [typer(e) for e in (rhs.begin, rhs.end, rhs.step)]
            for expr, dtype in zip((rhs.begin, rhs.end, rhs.step), types):
                if dtype not in NUMERIC and dtype != ANY:
                    self.report("TypeMismatch", expr.span, f"for bound must be a number, got {dtype}")
            self._check_for_target(stmt.span, types, stmt.dtype)
            return
        if isinstance(rhs, SelectGen):
            dtype = typer(rhs.source)
            if dtype not in ("list", ANY):
                self.report("TypeMismatch", rhs.source.span, f"select needs a list, got {dtype}")
            return
        dtype = typer(rhs)
        if not assignable(dtype, stmt.dtype):
            self.report("TypeMismatch", stmt.span,
                        f"cannot bind {dtype} value to {stmt.target} : {stmt.dtype}")

    def _check_for_target(self, span: Span, types: Sequence[str], target: str) -> None:
        if target not in NUMERIC:
            self.report("TypeMismatch", span, f"for enumerates numbers, not {target}")
        elif target == "int" and any(t != "int" for t in types):
            self.report("TypeMismatch", span, "for over int needs int bounds and step")


def _registry(modules: Iterable[ModuleDecl], analyzer: Analyzer) -> Dict[str, ModuleDecl]:
    registry: Dict[str, ModuleDecl] = {}
    for module in modules:
        if module.name in registry:
            analyzer._module = module
            first = registry[module.name]
            analyzer.report("DuplicateModule", module.span,
                            f"module {module.name!r} already defined at "
                            f"{first.file or '<input>'}:{first.span}")
            continue
        registry[module.name] = module
    return registry


def analyze(module: ModuleDecl, registry: Optional[Mapping[str, ModuleDecl]] = None) -> AnalyzedModule:
    """Analyze one module against a registry of callable modules."""
    registry = dict(registry or {})
    registry.setdefault(module.name, module)
    analyzer = Analyzer(registry)
    result = analyzer.analyze_module(module)
    if any(d.severity == "error" for d in analyzer.diagnostics):
        raise AnalysisError(analyzer.diagnostics)
    return result


def analyze_program(modules: Sequence[ModuleDecl]) -> Dict[str, AnalyzedModule]:
    """Analyze a compilation batch, raising once with every error found."""
    analyzer = Analyzer({})
    analyzer.registry = _registry(modules, analyzer)
    analyzed = {
        name: analyzer.analyze_module(module) for name, module in analyzer.registry.items()
    }
    if any(d.severity == "error" for d in analyzer.diagnostics):
        raise AnalysisError(analyzer.diagnostics)
    return analyzed
