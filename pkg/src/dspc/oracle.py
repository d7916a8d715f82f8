"""Reference interpreter over the scheduled AST.

Nondeterminism is Python generator recursion: a sequence of statements
solves the first statement and, for each of its solutions, the rest; a call
tries the methods in order; `dcall` keeps the first solution; `find` drains
every solution. There are no choice points, cells or continuations here, so
agreement with the VM is an independent check. The generators run on a
worker thread whose stack fits the raised recursion limit.
"""

import logging
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .analyzer import infer_type
from .config import Settings, get_settings
from .errors import InternalError, NonPositiveStep, RecursionDepthFault
from .frontend.ast import (
    Binary,
    Bind,
    Bool,
    Call,
    Expr,
    Find,
    ForGen,
    Func,
    ListLit,
    Num,
    SelectGen,
    Stmt,
    Tester,
    Unary,
    Var,
)
from .frontend.printer import format_expr
from .models import Solution, VerifyViolation
from .runtime.values import BINARY, FUNCTIONS, coerce, truth
from .scheduler import ScheduledMethod, ScheduledModule

logger = logging.getLogger(__name__)

Env = Dict[str, Any]
Answer = Tuple[Tuple[Any, ...], List[VerifyViolation]]


def evaluate(expr: Expr, env: Mapping[str, Any]) -> Any:
    if isinstance(expr, (Num, Bool)):
        return expr.value
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Unary):
        return -evaluate(expr.operand, env)
    if isinstance(expr, Binary):
        return BINARY[expr.op](evaluate(expr.left, env), evaluate(expr.right, env))
    if isinstance(expr, Func):
        return FUNCTIONS[expr.name](*(evaluate(a, env) for a in expr.args))
    if isinstance(expr, ListLit):
        return tuple(evaluate(a, env) for a in expr.items)
    raise InternalError(f"not an expression: {expr!r}")


def enumerate_for(begin, end, step, eps: float) -> Iterator[Any]:
    if step <= 0:
        raise NonPositiveStep(f"for step {step!r} is not positive")
    bound = end + eps * max(1.0, abs(end)) if isinstance(end, float) else end
    value = begin
    while value <= bound:
        yield value
        value = value + step


@lru_cache(maxsize=None)
def _worker(stack_mb: int) -> ThreadPoolExecutor:
    """One thread with a stack deep enough for the recursion limit."""
    previous = threading.stack_size(stack_mb * 1024 * 1024)
    try:
        executor = ThreadPoolExecutor(max_workers=1, thread_name_prefix="dspc-oracle")
        executor.submit(int).result()
    finally:
        threading.stack_size(previous)
    return executor


class Oracle:
    """Solves modules of one compilation batch."""

    def __init__(self, modules: Mapping[str, ScheduledModule], settings: Optional[Settings] = None):
        self.modules = modules
        self.settings = settings or get_settings()
        self.eps = self.settings.for_epsilon
        if sys.getrecursionlimit() < self.settings.oracle_recursion_limit:
            sys.setrecursionlimit(self.settings.oracle_recursion_limit)

    def solve(self, name: str, inputs: Mapping[str, Any]) -> Iterator[Solution]:
        module = self.modules[name]
        ins = [coerce(inputs[p.name], p.dtype) for p in module.decl.inputs]
        names = [p.name for p in module.decl.outputs]
        answers = self.call(name, ins, names)
        worker = _worker(self.settings.oracle_stack_mb)
        while True:
            try:
                answer = worker.submit(next, answers, None).result()
            except RecursionError:
                raise RecursionDepthFault(
                    f"recursion deeper than {sys.getrecursionlimit()} frames", name
                ) from None
            if answer is None:
                return
            outs, violations = answer
            yield Solution(outputs=dict(zip(names, outs)), violations=list(violations))

    # Calls

    def call(self, name: str, ins: Sequence[Any], outs: Sequence[str],
             real: bool = False, dtype: str = "any") -> Iterator[Answer]:
        module = self.modules.get(name)
        if module is not None:
            for method in module.methods:
                yield from self.method(module, method, ins)
        elif name == "for":
            b, e, s = (float(v) for v in ins) if real else ins
            for v in enumerate_for(b, e, s, self.eps):
                yield (v,), []
        elif name == "select":
            items = ins[0]
            if dtype != "any":
                items = tuple(coerce(v, dtype) for v in items)
            for v in items:
                yield (v,), []
        else:
            raise InternalError(f"call to unknown module {name!r}")

    def method(self, module: ScheduledModule, method: ScheduledMethod, ins) -> Iterator[Answer]:
        env = {p.name: v for p, v in zip(module.decl.inputs, ins)}
        outputs = [p.name for p in module.decl.outputs]
        where = f"{module.name}/{method.index}"
        for final, violations in self.sequence(method, where, 0, env, []):
            yield tuple(final[o] for o in outputs), violations

    def sequence(self, method: ScheduledMethod, where: str, k: int, env: Env,
                 violations: List[VerifyViolation]) -> Iterator[Tuple[Env, List[VerifyViolation]]]:
        if k == len(method.order):
            yield env, violations
            return
        stmt = method.analyzed.statements[method.order[k]]
        for env2, violations2 in self.statement(method, where, stmt, env, violations):
            yield from self.sequence(method, where, k + 1, env2, violations2)

    # Statements

    def statement(self, method: ScheduledMethod, where: str, stmt: Stmt, env: Env,
                  violations: List[VerifyViolation]):
        if isinstance(stmt, Tester):
            ok = truth(evaluate(stmt.cond, env))
            if stmt.op != "verify":
                if ok:
                    yield env, violations
                return
            if not ok:
                violation = VerifyViolation(
                    condition=format_expr(stmt.cond), method=where, bindings=dict(env)
                )
                violations = violations + [violation]
            yield env, violations
            return
        if isinstance(stmt, Bind):
            rhs = stmt.rhs
            if isinstance(rhs, ForGen):
                bounds = [evaluate(e, env) for e in (rhs.begin, rhs.end, rhs.step)]
                if stmt.dtype == "real":
                    bounds = [float(v) for v in bounds]
                for v in enumerate_for(*bounds, self.eps):
                    yield {**env, stmt.target: v}, violations
            elif isinstance(rhs, SelectGen):
                source = evaluate(rhs.source, env)
                items = [coerce(v, stmt.dtype) for v in coerce(source, "list")]
                for v in items:
                    yield {**env, stmt.target: v}, violations
            else:
                yield {**env, stmt.target: coerce(evaluate(rhs, env), stmt.dtype)}, violations
            return
        symbols = method.analyzed.symbols
        ins = self.arguments(stmt.callee, stmt.inputs, env)
        if isinstance(stmt, Find):
            real = any(infer_type(e, symbols.dtype) != "int" for e in stmt.inputs)
            results, found = [], []
            for outs, v in self.call(stmt.callee, ins, (), real):
                results.append(outs[0] if len(outs) == 1 else outs)
                found.extend(v)
            yield {**env, stmt.target: tuple(results)}, violations + found
            return
        out_dtype = symbols.dtype(stmt.outputs[0]) if stmt.outputs else "any"
        real = out_dtype == "real" if out_dtype in ("int", "real") else any(
            infer_type(e, symbols.dtype) != "int" for e in stmt.inputs
        )
        answers = self.call(stmt.callee, ins, stmt.outputs, real, out_dtype)
        if stmt.op == "dcall":
            first = next(answers, None)
            answers = iter([first] if first is not None else [])
        for outs, v in answers:
            yield {**env, **dict(zip(stmt.outputs, outs))}, violations + v

    def arguments(self, callee: str, exprs: Sequence[Expr], env: Env) -> List[Any]:
        values = [evaluate(e, env) for e in exprs]
        module = self.modules.get(callee)
        if module is None:
            return values
        return [coerce(v, p.dtype) for v, p in zip(values, module.decl.inputs)]


def oracle_solve(
    module: ScheduledModule,
    inputs: Mapping[str, Any],
    modules: Optional[Mapping[str, ScheduledModule]] = None,
    settings: Optional[Settings] = None,
) -> Iterator[Solution]:
    """Lazy solution sequence of `module` under the reference semantics."""
    table = dict(modules or {})
    table.setdefault(module.name, module)
    return Oracle(table, settings).solve(module.name, inputs)
