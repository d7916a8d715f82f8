"""Command-line driver: check, run, emit and bench.

Solutions and reports go to stdout, diagnostics and logs to stderr. Exit
codes: 0 success, 1 no solution, 2 any error.
"""

import argparse
import itertools
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import SUITES, BenchRunner, format_table, report_table
from .config import Settings, get_settings
from .errors import AnalysisError, DspcError
from .lowering import format_graph
from .pipeline import ENGINES, Compiler, corpus_path, parse_inputs
from .runtime import VM
from .scheduler import format_schedule

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_ERROR = 2


def source_path(name: str) -> Path:
    """A file on disk, or else the bundled corpus program of that name."""
    path = Path(name)
    if path.exists():
        return path
    return corpus_path(path.name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dspc",
        description="Compiler and engine for DSP, a nondeterministic functional language.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log INFO to stderr; repeat for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse, analyze and schedule source files")
    check.add_argument("files", nargs="+", help="DSP source files or corpus names")
    check.add_argument("--dump-schedule", action="store_true",
                       help="print statement orders and continuation units")
    check.add_argument("--dump-graph", action="store_true",
                       help="print lowered graphs with their cell layouts")

    run = sub.add_parser("run", help="solve a module and stream its solutions")
    run.add_argument("files", nargs="+", help="DSP source files or corpus names")
    run.add_argument("-m", "--module", help="module to solve (default: first in the batch)")
    run.add_argument("-i", "--input", action="append", default=[], metavar="NAME=VALUE",
                     help="input literal; repeat for each input")
    limit = run.add_mutually_exclusive_group()
    limit.add_argument("--all", action="store_true", help="print every solution")
    limit.add_argument("--limit", type=int, metavar="N", help="stop after N solutions")
    limit.add_argument("--count", action="store_true", help="print only the number of solutions")
    run.add_argument("--engine", choices=ENGINES, default="vm")
    run.add_argument("--format", choices=("text", "jsonl"), default="text")
    run.add_argument("--stats", action="store_true", help="print engine counters to stderr")

    emit = sub.add_parser("emit", help="translate modules to a Python package")
    emit.add_argument("files", nargs="+", help="DSP source files or corpus names")
    emit.add_argument("-o", "--out", required=True, type=Path, help="output directory")

    bench = sub.add_parser("bench", help="time corpus programs on both engines")
    bench.add_argument("suite", choices=["all", *SUITES])
    bench.add_argument("--trials", type=int, help="drains per engine (default: settings)")
    bench.add_argument("--engine", choices=ENGINES, action="append",
                       help="restrict to one engine; repeatable")
    return parser


def configure_logging(settings: Settings, verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


# Commands

def cmd_check(args, compiler: Compiler) -> int:
    program = compiler.compile_files([source_path(f) for f in args.files])
    for diag in program.warnings:
        print(diag.render(), file=sys.stderr)
    for name, module in program.scheduled.items():
        if args.dump_schedule:
            sys.stdout.write(format_schedule(module))
        if args.dump_graph:
            sys.stdout.write(format_graph(program.linked[name]))
    return EXIT_OK


def cmd_run(args, compiler: Compiler) -> int:
    program = compiler.compile_files([source_path(f) for f in args.files])
    name = args.module or next(iter(program.modules))
    inputs = parse_inputs(args.input)
    vm = VM(compiler.settings) if args.engine == "vm" else None
    stream = compiler.solutions(program, name, inputs, args.engine, vm)
    if args.count:
        count = sum(1 for _ in stream)
        print(count)
    else:
        if args.all:
            limit = None
        elif args.limit is not None:
            limit = max(args.limit, 0)
        else:
            limit = 1
        count = 0
        for solution in itertools.islice(stream, limit):
            print(solution.to_jsonl() if args.format == "jsonl" else solution.to_text())
            count += 1
    if args.stats and vm is not None:
        print(vm.stats().model_dump_json(), file=sys.stderr)
    logger.info("%s: %d solution(s) on %s", name, count, args.engine)
    return EXIT_OK if count else EXIT_NO_SOLUTION


def cmd_emit(args, compiler: Compiler) -> int:
    program = compiler.compile_files([source_path(f) for f in args.files])
    for path in compiler.emit(program, args.out):
        print(path)
    return EXIT_OK


def cmd_bench(args, compiler: Compiler) -> int:
    runner = BenchRunner(compiler.settings, compiler)
    reports = runner.run(args.suite, args.trials, args.engine or ENGINES)
    sys.stdout.write(format_table(report_table(reports)))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "run": cmd_run, "emit": cmd_emit, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    settings = get_settings()
    configure_logging(settings, args.verbose)
    compiler = Compiler(settings)
    try:
        return COMMANDS[args.command](args, compiler)
    except AnalysisError as exc:
        for diag in exc.diagnostics:
            print(diag.render(), file=sys.stderr)
        return EXIT_ERROR
    except DspcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
