"""The compilation pipeline and the solution drivers built on it."""

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Union

from .analyzer import AnalyzedModule, analyze_program
from .config import Settings, get_settings
from .emitter import emit_program, load_emitted
from .errors import DspcError, InputError, RuntimeFault
from .frontend import ModuleDecl, parse_expression, parse_source
from .lowering import LinkedProgram, link, lower
from .models import Diagnostic, Solution
from .oracle import Oracle
from .runtime import SUCCESS, VM, Executable, VarCell, coerce, eval_expr
from .scheduler import ScheduledModule, schedule_program

logger = logging.getLogger(__name__)

ENGINES = ("vm", "oracle")
CORPUS = ("quarter", "for", "plan", "nqueens", "ack", "ack_nocut", "tarai", "tarai_nocut")


@dataclass
class Program:
    """One compilation batch carried through every stage."""

    source: str
    modules: Dict[str, ModuleDecl]
    analyzed: Dict[str, AnalyzedModule]
    scheduled: Dict[str, ScheduledModule]
    linked: LinkedProgram

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for m in self.analyzed.values() for d in m.warnings]

    def module(self, name: str) -> ModuleDecl:
        decl = self.modules.get(name)
        if decl is None:
            known = ", ".join(sorted(self.modules)) or "none"
            raise InputError(f"no module named {name!r} (known: {known})")
        return decl


def corpus_path(name: str) -> Path:
    """Path of a bundled benchmark program, e.g. `corpus_path("nqueens")`."""
    stem = name[:-4] if name.endswith(".dsp") else name
    path = Path(str(resources.files("dspc") / "corpus" / f"{stem}.dsp"))
    if not path.is_file():
        raise InputError(f"no corpus program named {stem!r}")
    return path


def parse_inputs(assignments: Sequence[str]) -> Dict[str, Any]:
    """Parse `name=value` pairs; values use the language's literal grammar."""
    values: Dict[str, Any] = {}
    for item in assignments:
        name, sep, text = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise InputError(f"input {item!r} is not of the form name=value")
        try:
            values[name] = eval_expr(parse_expression(text, f"<input {name}>"), {})
        except DspcError as exc:
            raise InputError(f"input {name}: {exc}") from exc
    return values


def drive(vm: VM, goal: Executable, names: Sequence[str], cells: Sequence[VarCell]) -> Iterator[Solution]:
    """Call `goal`, then redo it until the choice-point stack runs out."""
    found = vm.call(goal)
    while found:
        yield Solution(
            outputs={n: c.value for n, c in zip(names, cells)},
            violations=list(vm.violations),
        )
        found = vm.redo()


class Compiler:
    """Parses, analyzes, schedules, lowers and links DSP sources, then runs them."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    # Compilation

    def parse_files(self, paths: Sequence[Union[str, Path]]) -> List[ModuleDecl]:
        modules: List[ModuleDecl] = []
        for path in paths:
            path = Path(path)
            modules.extend(parse_source(path.read_text(encoding="utf-8"), str(path)))
        return modules

    def compile_modules(self, modules: Sequence[ModuleDecl], source: str = "<input>") -> Program:
        analyzed = analyze_program(modules)
        scheduled = schedule_program(analyzed)
        registry = {name: m.decl for name, m in analyzed.items()}
        graphs = [lower(m, registry) for m in scheduled.values()]
        linked = link(graphs)
        logger.info("compiled %s: %d module(s)", source, len(analyzed))
        return Program(source, registry, analyzed, scheduled, linked)

    def compile_source(self, source: str, file: str = "<input>") -> Program:
        return self.compile_modules(parse_source(source, file), file)

    def compile_files(self, paths: Sequence[Union[str, Path]]) -> Program:
        source = ", ".join(Path(p).name for p in paths)
        return self.compile_modules(self.parse_files(paths), source)

    def compile_corpus(self, *names: str) -> Program:
        return self.compile_files([corpus_path(n) for n in names])

    # Running

    def bind_inputs(self, decl: ModuleDecl, inputs: Mapping[str, Any]) -> List[Any]:
        declared = {p.name for p in decl.inputs}
        extra = sorted(set(inputs) - declared)
        if extra:
            raise InputError(f"module {decl.name} has no input(s) {', '.join(extra)}")
        values = []
        for p in decl.inputs:
            if p.name not in inputs:
                raise InputError(f"module {decl.name} needs input {p.name} : {p.dtype}")
            try:
                values.append(coerce(inputs[p.name], p.dtype))
            except RuntimeFault as exc:
                raise InputError(f"input {p.name}: {exc}") from exc
        return values

    def solutions(self, program: Program, name: str, inputs: Mapping[str, Any],
                  engine: str = "vm", vm: Optional[VM] = None) -> Iterator[Solution]:
        """Lazy solution stream of module `name` on the chosen engine."""
        if engine == "vm":
            return self.vm_solutions(program, name, inputs, vm)
        if engine == "oracle":
            return self.oracle_solutions(program, name, inputs)
        raise InputError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")

    def vm_solutions(self, program: Program, name: str, inputs: Mapping[str, Any],
                     vm: Optional[VM] = None) -> Iterator[Solution]:
        decl = program.module(name)
        ins = self.bind_inputs(decl, inputs)
        vm = vm or VM(self.settings)
        graph = program.linked[name]
        cells = [vm.new_cell() for _ in graph.outputs]
        goal = program.linked.invoke(vm, name, ins, cells, SUCCESS)
        return drive(vm, goal, graph.outputs, cells)

    def oracle_solutions(self, program: Program, name: str,
                         inputs: Mapping[str, Any]) -> Iterator[Solution]:
        decl = program.module(name)
        ins = self.bind_inputs(decl, inputs)
        oracle = Oracle(program.scheduled, self.settings)
        return oracle.solve(name, dict(zip((p.name for p in decl.inputs), ins)))

    # Python backend

    def emit(self, program: Program, out_dir: Union[str, Path]) -> List[Path]:
        return emit_program(program.scheduled, Path(out_dir), program.source)

    def emitted_solutions(self, program: Program, package, name: str,
                          inputs: Mapping[str, Any], vm: Optional[VM] = None) -> Iterator[Solution]:
        """Solutions of the emitted class for `name` in an imported package."""
        decl = program.module(name)
        ins = self.bind_inputs(decl, inputs)
        vm = vm or VM(self.settings)
        cells = [vm.new_cell() for _ in decl.outputs]
        cls = package.MODULES[name]
        return drive(vm, cls(*ins, *cells, SUCCESS), [p.name for p in decl.outputs], cells)

    def load_emitted(self, out_dir: Union[str, Path]):
        return load_emitted(Path(out_dir))


def solve(source: str, name: str, inputs: Mapping[str, Any], engine: str = "vm",
          settings: Optional[Settings] = None) -> List[Solution]:
    """Compile `source` and drain every solution of module `name`."""
    compiler = Compiler(settings)
    return list(compiler.solutions(compiler.compile_source(source), name, inputs, engine))


__all__ = [
    "CORPUS",
    "ENGINES",
    "Compiler",
    "Program",
    "corpus_path",
    "drive",
    "parse_inputs",
    "solve",
]
