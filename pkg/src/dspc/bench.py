"""Benchmark harness.

A suite is compiled once. Each trial drains all of its solutions on a fresh
engine, forcing backtracking after every answer. Times are wall-clock
milliseconds per full drain.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from .config import Settings, get_settings
from .errors import InputError
from .models import BenchReport
from .pipeline import ENGINES, Compiler, Program
from .runtime import VM

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Suite:
    name: str
    file: str
    module: str
    inputs: Dict[str, Any] = field(default_factory=dict)


SUITES: Dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("plan", "plan", "plan", {"Width": 60.0, "Depth": 40.0, "Stories": 3}),
        Suite("nqueens", "nqueens", "nqueens", {"N": 8}),
        Suite("ack", "ack", "ack", {"M": 3, "N": 3}),
        Suite("tarai", "tarai", "tarai", {"X": 10, "Y": 5, "Z": 0}),
        Suite("ack_nocut", "ack_nocut", "ack_nocut", {"M": 3, "N": 3}),
        Suite("tarai_nocut", "tarai_nocut", "tarai_nocut", {"X": 10, "Y": 5, "Z": 0}),
    )
}


def select_suites(name: str) -> List[Suite]:
    if name == "all":
        return list(SUITES.values())
    if name not in SUITES:
        raise InputError(f"unknown bench suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [SUITES[name]]


class BenchRunner:
    """Runs bench suites sequentially and tabulates the reports."""

    def __init__(self, settings: Optional[Settings] = None, compiler: Optional[Compiler] = None):
        self.settings = settings or get_settings()
        self.compiler = compiler or Compiler(self.settings)
        self._programs: Dict[str, Program] = {}

    def program(self, suite: Suite) -> Program:
        if suite.file not in self._programs:
            self._programs[suite.file] = self.compiler.compile_corpus(suite.file)
        return self._programs[suite.file]

    def run_suite(self, suite: Suite, engine: str, trials: int) -> BenchReport:
        program = self.program(suite)
        times = []
        count = 0
        vm = None
        for _ in range(trials):
            vm = VM(self.settings) if engine == "vm" else None
            start = time.perf_counter()
            stream = self.compiler.solutions(program, suite.module, suite.inputs, engine, vm)
            count = sum(1 for _ in stream)
            times.append((time.perf_counter() - start) * 1000.0)
        samples = np.asarray(times)
        report = BenchReport(
            program=suite.name,
            engine=engine,
            inputs=dict(suite.inputs),
            solutions=count,
            trials=trials,
            mean_ms=float(samples.mean()),
            std_ms=float(samples.std()),
            stats=vm.stats() if vm is not None else None,
        )
        logger.info("bench %s on %s: %d solution(s), %.1f ms", suite.name, engine,
                    count, report.mean_ms)
        return report

    def run(self, suite: str = "all", trials: Optional[int] = None,
            engines: Sequence[str] = ENGINES) -> List[BenchReport]:
        trials = trials or self.settings.default_trials
        if trials < 1:
            raise InputError(f"trials must be at least 1, got {trials}")
        for engine in engines:
            if engine not in ENGINES:
                raise InputError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
        return [
            self.run_suite(s, engine, trials) for s in select_suites(suite) for engine in engines
        ]


def report_table(reports: Sequence[BenchReport]) -> pd.DataFrame:
    """One row per program: per-engine times, solution counts, VM counters, speed ratio."""
    frame = pd.DataFrame(
        [
            {
                "program": r.program,
                "engine": r.engine,
                "solutions": r.solutions,
                "mean_ms": r.mean_ms,
                "std_ms": r.std_ms,
                **(r.stats.model_dump() if r.stats is not None else {}),
            }
            for r in reports
        ]
    )
    if frame.empty:
        return frame
    order = list(frame["program"].unique())
    times = frame.pivot(index="program", columns="engine", values=["mean_ms", "std_ms"])
    times.columns = [f"{engine}_{value}" for value, engine in times.columns]
    counts = frame.groupby("program")["solutions"]
    table = pd.DataFrame({"solutions": counts.first(), "agree": counts.nunique() == 1})
    table = table.join(times)
    if {"vm_mean_ms", "oracle_mean_ms"} <= set(table.columns):
        table["speedup"] = table["oracle_mean_ms"] / table["vm_mean_ms"]
    vm_rows = frame[frame["engine"] == "vm"]
    if not vm_rows.empty:
        stats = ["exec_steps", "pushes", "pops", "peak_depth", "commits"]
        table = table.join(vm_rows.set_index("program")[stats])
    for program in table.index[~table["agree"]]:
        logger.error("engines disagree on the solution count of %s", program)
    return table.reindex(order)


def format_table(table: pd.DataFrame) -> str:
    if table.empty:
        return "no reports\n"
    return table.to_string(float_format=lambda v: f"{v:.2f}") + "\n"
