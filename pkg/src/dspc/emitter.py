"""Python source backend.

Each DSP module becomes one Python file holding one class. Methods are
nested classes `Method_<i>`; continuation units are classes nested in their
method, `Method_<i>_cu<j>`, and a unit split by `dcall` or `find` continues
in `Method_<i>_cu<j>_<k>`. A method's first unit is emitted inline in
`Method_<i>.exec`. Inputs are plain attributes, outputs and locals are cells.
"""

import importlib.util
import keyword
import logging
import re
import sys
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .analyzer import infer_type
from .errors import EmitError, InternalError
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
    ModuleDecl,
    Num,
    SelectGen,
    Stmt,
    Tester,
    Unary,
    Var,
)
from .frontend.printer import format_expr, format_signature
from .scheduler import ContinuationUnit, ScheduledMethod, ScheduledModule

logger = logging.getLogger(__name__)

RESERVED = frozenset(keyword.kwlist) | frozenset(
    {"m", "mt", "vm", "rt", "self", "cont", "exec", "value", "get", "METHODS"}
)
_GENERATED = re.compile(r"^(cu\d+(_\d+)?|Method_\w*|dsp_\w*)$")

_OPS = {"=<": "<=", ">=": ">=", "<": "<", ">": ">", "=": "==", "\\=": "!=",
        "+": "+", "-": "-", "*": "*"}
_FUNCS = {"sqrt": "rt.sqrt", "abs": "abs", "min": "rt.minimum", "max": "rt.maximum",
          "len": "rt.length", "head": "rt.head", "tail": "rt.tail", "nth": "rt.nth",
          "cons": "rt.cons", "remove": "rt.remove"}

HEADER = '''"""%(signature)s

Generated by dspc from %(source)s. Do not edit.
"""

from dspc.runtime import support as rt
'''

CLASS_BEGIN = '''

class %(cls)s:
    def __init__(self, %(params)s):
%(assigns)s
        self.cont = cont

    def exec(self, vm):
        return %(start)s
'''

METHOD_BEGIN = '''
    class Method_%(i)d:
        def __init__(self, m):
            self.m = m

        def exec(self, vm):
            mt = self
            m = self.m
'''

UNIT_BEGIN = '''
        class %(cls)s:
            def __init__(self, mt):
                self.mt = mt

            def exec(self, vm):
                mt = self.mt
                m = mt.m
'''

INIT_FILE = '''"""Python translation of %(source)s generated by dspc."""

%(imports)s

MODULES = {
%(entries)s
}
'''


def py_name(name: str) -> str:
    """Attribute name of a DSP variable; `dsp_` prefix on collision with Python or generated names."""
    if name in RESERVED or _GENERATED.match(name):
        return "dsp_" + name
    return name


def class_name(module: str) -> str:
    name = module[0].upper() + module[1:]
    if keyword.iskeyword(name) or name.startswith("Dsp_"):
        return "Dsp_" + module
    return name


def file_name(module: str) -> str:
    return f"dsp_{module}" if keyword.iskeyword(module) or module.startswith("dsp_") else module


def put(lines: List[str], text: str, indent: int = 0) -> None:
    pad = " " * indent
    for line in text.strip("\n").split("\n"):
        lines.append(pad + line if line else "")


class ModuleEmitter:
    def __init__(self, module: ScheduledModule, registry: Mapping[str, ModuleDecl]):
        self.module = module
        self.decl = module.decl
        self.registry = registry
        self.inputs = {p.name for p in self.decl.inputs}
        self.outputs = {p.name for p in self.decl.outputs}

    # Names

    def callee_class(self, name: str) -> str:
        if name == self.decl.name:
            return class_name(name)
        return f"_m_{file_name(name)}.{class_name(name)}"

    def siblings(self) -> List[str]:
        names = set()
        for method in self.module.methods:
            for stmt in method.analyzed.statements:
                callee = getattr(stmt, "callee", None)
                if callee in self.registry and callee != self.decl.name:
                    names.add(callee)
        return sorted(names)

    def read(self, name: str) -> str:
        attr = py_name(name)
        if name in self.inputs:
            return f"m.{attr}"
        if name in self.outputs:
            return f"m.{attr}.get()"
        return f"mt.{attr}.get()"

    def cell(self, name: str) -> str:
        return f"m.{py_name(name)}" if name in self.outputs else f"mt.{py_name(name)}"

    # Expressions

    def expr(self, expr: Expr) -> str:
        if isinstance(expr, Num):
            return repr(expr.value)
        if isinstance(expr, Bool):
            return "True" if expr.value else "False"
        if isinstance(expr, Var):
            return self.read(expr.name)
        if isinstance(expr, Unary):
            return f"(-{self.expr(expr.operand)})"
        if isinstance(expr, Binary):
            left, right = self.expr(expr.left), self.expr(expr.right)
            if expr.op == "/":
                return f"rt.div({left}, {right})"
            if expr.op == "^":
                return f"rt.power({left}, {right})"
            return f"({left} {_OPS[expr.op]} {right})"
        if isinstance(expr, Func):
            return f"{_FUNCS[expr.name]}({', '.join(self.expr(a) for a in expr.args)})"
        if isinstance(expr, ListLit):
            items = [self.expr(a) for a in expr.items]
            return "(" + ", ".join(items) + ("," if len(items) == 1 else "") + ")"
        raise InternalError(f"not an expression: {expr!r}")

    def typed(self, method: ScheduledMethod, expr: Expr, target: Optional[str]) -> str:
        text = self.expr(expr)
        if target is None:
            return text
        got = infer_type(expr, method.analyzed.symbols.dtype)
        if got == target:
            return text
        if got == "int" and target == "real":
            return f"float({text})"
        return f"rt.coerce({text}, {target!r})"

    # Statements

    def op_lines(self, method: ScheduledMethod, node: int) -> List[str]:
        stmt = method.analyzed.statements[node]
        if isinstance(stmt, Bind):
            return [f"{self.cell(stmt.target)}.value = {self.typed(method, stmt.rhs, stmt.dtype)}"]
        if not isinstance(stmt, Tester):
            raise InternalError(f"{stmt.kind} cannot run inside a unit prefix")
        cond = self.expr(stmt.cond)
        if infer_type(stmt.cond, method.analyzed.symbols.dtype) != "bool":
            cond = f"rt.truth({cond})"
        if stmt.op != "verify":
            return [f"if not {cond}:", "    return rt.FAILURE"]
        bindings = ", ".join(
            f"{n!r}: {self.read(n) if n in self.inputs else self.cell(n)}"
            for n in method.scope(node)
        )
        where = f"{self.decl.name}/{method.index}"
        return [
            f"if not {cond}:",
            f"    vm.violate(rt.violation({format_expr(stmt.cond)!r}, {where!r}, {{{bindings}}}))",
        ]

    def invoke(self, method: ScheduledMethod, stmt: Stmt, cont: str) -> str:
        """Expression starting `stmt`'s callee with continuation `cont`."""
        symbols = method.analyzed.symbols
        callee = stmt.callee
        decl = self.registry.get(callee)
        if isinstance(stmt, Find):
            n_outputs = len(decl.outputs) if decl is not None else 1
            if decl is not None:
                ins = [self.typed(method, e, p.dtype) for e, p in zip(stmt.inputs, decl.inputs)]
                target = f"rt.ClassCallee({self.callee_class(callee)})"
            else:
                ins = [self.expr(e) for e in stmt.inputs]
                if callee == "for":
                    real = any(infer_type(e, symbols.dtype) != "int" for e in stmt.inputs)
                    target = f"rt.BuiltinFor({real})"
                else:
                    target = "rt.BuiltinSelect()"
            return (f"rt.find_all(vm, {target}, [{', '.join(ins)}], {n_outputs}, "
                    f"{self.cell(stmt.target)}, {cont})")
        outs = [self.cell(n) for n in stmt.outputs]
        if decl is not None:
            ins = [self.typed(method, e, p.dtype) for e, p in zip(stmt.inputs, decl.inputs)]
            return f"{self.callee_class(callee)}({', '.join(ins + outs + [cont])})"
        out_dtype = symbols.dtype(stmt.outputs[0])
        if callee == "for":
            if out_dtype in ("int", "real"):
                real = out_dtype == "real"
            else:
                real = any(infer_type(e, symbols.dtype) != "int" for e in stmt.inputs)
            args = [f"float({self.expr(e)})" if real else self.expr(e) for e in stmt.inputs]
            return f"rt.gen_for(vm, {', '.join(args)}, {outs[0]}, {cont})"
        return (f"rt.gen_select(vm, {self.expr(stmt.inputs[0])}, {outs[0]}, {cont}, "
                f"{out_dtype!r})")

    def generator(self, method: ScheduledMethod, stmt: Stmt, cont: str) -> str:
        if isinstance(stmt, Bind) and isinstance(stmt.rhs, ForGen):
            target = "real" if stmt.dtype == "real" else None
            bounds = [self.typed(method, e, target) for e in (stmt.rhs.begin, stmt.rhs.end, stmt.rhs.step)]
            return f"rt.gen_for(vm, {', '.join(bounds)}, {self.cell(stmt.target)}, {cont})"
        if isinstance(stmt, Bind) and isinstance(stmt.rhs, SelectGen):
            return (f"rt.gen_select(vm, {self.expr(stmt.rhs.source)}, {self.cell(stmt.target)}, "
                    f"{cont}, {stmt.dtype!r})")
        if isinstance(stmt, Call):
            return self.invoke(method, stmt, cont)
        raise InternalError(f"{stmt.kind} is not a generator")

    # Units

    @staticmethod
    def pieces(method: ScheduledMethod, unit: ContinuationUnit) -> List[Tuple[List[int], Optional[int]]]:
        pieces: List[Tuple[List[int], Optional[int]]] = []
        current: List[int] = []
        for n in unit.prefix:
            stmt = method.analyzed.statements[n]
            if isinstance(stmt, Find) or (isinstance(stmt, Call) and stmt.op == "dcall"):
                pieces.append((current, n))
                current = []
            else:
                current.append(n)
        pieces.append((current, unit.trailing_generator))
        return pieces

    def body(self, method: ScheduledMethod, unit: ContinuationUnit, k: int,
             piece: Tuple[List[int], Optional[int]], last_piece: bool) -> List[str]:
        nodes, tail = piece
        lines: List[str] = []
        for n in nodes:
            lines.extend(self.op_lines(method, n))
        if not last_piece:
            stmt = method.analyzed.statements[tail]
            cont = f"mt.cu{unit.index}_{k + 1}"
            if isinstance(stmt, Call):
                cont = f"rt.Commit(vm.depth, {cont})"
            lines.append(f"return {self.invoke(method, stmt, cont)}")
        elif tail is not None:
            units = method.units
            cont = "m.cont" if unit is units[-1] else f"mt.cu{unit.index + 1}"
            lines.append(f"return {self.generator(method, method.analyzed.statements[tail], cont)}")
        else:
            lines.append("return m.cont")
        return lines

    def emit_method(self, method: ScheduledMethod, out: List[str]) -> None:
        i = method.index
        out.append("")
        put(out, METHOD_BEGIN % {"i": i})
        prelude: List[str] = []
        for sym in method.analyzed.symbols.locals():
            if not sym.is_output:
                prelude.append(f"mt.{py_name(sym.name)} = vm.new_cell()")
        nested: List[Tuple[str, str, List[str]]] = []
        first: List[str] = []
        for unit in method.units:
            pieces = self.pieces(method, unit)
            for k, piece in enumerate(pieces):
                lines = self.body(method, unit, k, piece, k == len(pieces) - 1)
                if unit.index == 1 and k == 0:
                    first = lines
                    continue
                attr = f"cu{unit.index}" if k == 0 else f"cu{unit.index}_{k}"
                nested.append((attr, f"Method_{i}_{attr}", lines))
        for attr, cls, _ in nested:
            prelude.append(f"mt.{attr} = mt.{cls}(mt)")
        for line in prelude + first:
            put(out, line, 12)
        for _, cls, lines in nested:
            out.append("")
            put(out, UNIT_BEGIN % {"cls": cls})
            for line in lines:
                put(out, line, 16)

    def emit(self, source: str) -> str:
        decl = self.decl
        cls = class_name(decl.name)
        params = [py_name(p.name) for p in decl.inputs + decl.outputs] + ["cont"]
        assigns = "\n".join(f"        self.{p} = {p}" for p in params[:-1])
        if len(decl.methods) == 1:
            start = "self.Method_1(self).exec(vm)"
        else:
            start = "rt.Alternatives(self.METHODS, self).exec(vm)"
        out: List[str] = []
        put(out, HEADER % {"signature": format_signature(decl), "source": source})
        for name in self.siblings():
            out.append(f"from . import {file_name(name)} as _m_{file_name(name)}")
        out.extend(["", ""])
        put(out, CLASS_BEGIN % {"cls": cls, "params": ", ".join(params),
                                "assigns": assigns, "start": start})
        for method in self.module.methods:
            self.emit_method(method, out)
        if len(decl.methods) > 1:
            out.append("")
            names = ", ".join(f"Method_{m.index}" for m in self.module.methods)
            out.append(f"    METHODS = ({names})")
        return "\n".join(out) + "\n"


def _check_names(modules: Sequence[str]) -> None:
    for mangle, what in ((class_name, "class"), (file_name, "file")):
        seen: Dict[str, str] = {}
        for name in modules:
            key = mangle(name).lower() if what == "file" else mangle(name)
            if key in seen:
                raise EmitError(f"modules {seen[key]!r} and {name!r} map to the same Python {what} "
                                f"{mangle(name)!r}")
            seen[key] = name


def emit(module: ScheduledModule, registry: Optional[Mapping[str, ModuleDecl]] = None,
         source: Optional[str] = None) -> str:
    """Python source of one module; `registry` names the sibling modules it may call."""
    registry = dict(registry or {})
    registry.setdefault(module.name, module.decl)
    _check_names(list(registry))
    text = ModuleEmitter(module, registry).emit(source or module.decl.file or "<input>")
    logger.debug("emitted module %s", module.name)
    return text


def emit_program(modules: Mapping[str, ScheduledModule], out_dir: Path,
                 source: str = "<input>") -> List[Path]:
    """Write one file per module, a package `__init__.py` and `requirements.txt`."""
    registry = {name: m.decl for name, m in modules.items()}
    _check_names(list(registry))
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(modules):
        path = out_dir / f"{file_name(name)}.py"
        path.write_text(emit(modules[name], registry, source), encoding="utf-8")
        written.append(path)
    imports = "\n".join(
        f"from .{file_name(n)} import {class_name(n)}" for n in sorted(modules)
    )
    entries = "\n".join(f"    {n!r}: {class_name(n)}," for n in sorted(modules))
    init = out_dir / "__init__.py"
    init.write_text(INIT_FILE % {"source": source, "imports": imports, "entries": entries},
                    encoding="utf-8")
    requirements = out_dir / "requirements.txt"
    requirements.write_text("dspc\n", encoding="utf-8")
    logger.info("wrote %d module(s) to %s", len(modules), out_dir)
    return written + [init, requirements]


def load_emitted(out_dir: Path, package: Optional[str] = None):
    """Import an emitted package from `out_dir` and return it."""
    out_dir = Path(out_dir)
    package = package or f"dspc_emitted_{re.sub(r'[^0-9A-Za-z_]', '_', out_dir.name)}"
    spec = importlib.util.spec_from_file_location(
        package, out_dir / "__init__.py", submodule_search_locations=[str(out_dir)]
    )
    if spec is None or spec.loader is None:
        raise EmitError(f"cannot load emitted package from {out_dir}")
    module = importlib.util.module_from_spec(spec)
    sys.modules[package] = module
    spec.loader.exec_module(module)
    return module
