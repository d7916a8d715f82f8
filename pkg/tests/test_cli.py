import json

import pytest

from conftest import QUARTER
from dspc.cli import EXIT_ERROR, EXIT_NO_SOLUTION, EXIT_OK, build_parser, main

pytestmark = pytest.mark.integration

QUARTER_RUN = ["run", "quarter.dsp", "-m", "pointInQuarterCircle"]


@pytest.fixture
def source_file(tmp_path):
    def write(text, name="prog.dsp"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


class TestRun:
    def test_all_solutions(self, capsys):
        assert main(QUARTER_RUN + ["-i", "R=2.0", "--all"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 6
        assert lines[0] == "X=0.0, Y=0.0"

    def test_first_solution_by_default(self, capsys):
        assert main(QUARTER_RUN + ["-i", "R=2.0"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["X=0.0, Y=0.0"]

    def test_limit(self, capsys):
        assert main(QUARTER_RUN + ["-i", "R=2.0", "--limit", "4"]) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 4

    def test_no_solution(self, capsys):
        assert main(QUARTER_RUN + ["-i", "R=-1.0", "--all"]) == EXIT_NO_SOLUTION
        assert capsys.readouterr().out == ""

    def test_count(self, capsys):
        argv = ["run", "nqueens", "-m", "nqueens", "-i", "N=8", "--count"]
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out.strip() == "92"

    def test_jsonl_on_oracle(self, capsys):
        argv = QUARTER_RUN + ["-i", "R=1.0", "--all", "--format", "jsonl", "--engine", "oracle"]
        assert main(argv) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [r["outputs"] for r in records] == [
            {"X": 0.0, "Y": 0.0}, {"X": 0.0, "Y": 1.0}, {"X": 1.0, "Y": 0.0},
        ]
        assert all(r["violations"] == [] for r in records)

    def test_stats_go_to_stderr(self, capsys):
        assert main(QUARTER_RUN + ["-i", "R=2.0", "--all", "--stats"]) == EXIT_OK
        captured = capsys.readouterr()
        stats = json.loads(captured.err.strip().splitlines()[-1])
        assert stats["solutions"] == 6

    def test_missing_input(self, capsys):
        assert main(QUARTER_RUN) == EXIT_ERROR
        assert "needs input R" in capsys.readouterr().err

    def test_bad_input_literal(self, capsys):
        assert main(QUARTER_RUN + ["-i", "R"]) == EXIT_ERROR
        assert "name=value" in capsys.readouterr().err

    def test_unknown_module(self, capsys):
        assert main(["run", "quarter.dsp", "-m", "circle", "-i", "R=1.0"]) == EXIT_ERROR
        assert "no module named 'circle'" in capsys.readouterr().err

    def test_runtime_fault(self, capsys, source_file):
        path = source_file("m({A : int}, {B : real})\n  method\n    B : real = 1 / A;\n"
                           "  end method;\nend;\n")
        assert main(["run", path, "-i", "A=0"]) == EXIT_ERROR
        assert "DivisionByZero" in capsys.readouterr().err

    def test_deep_recursion_on_oracle(self, capsys, source_file):
        path = source_file("down({N : int}, {R : int})\n"
                           "  method\n    when(N = 0);\n    R : int = 0;\n  end method;\n"
                           "  method\n    when(N > 0);\n    N1 : int = N - 1;\n"
                           "    call(down, {N1}, {R});\n  end method;\nend;\n")
        assert main(["run", path, "-i", "N=10000", "--engine", "oracle"]) == EXIT_ERROR
        assert "RecursionDepthFault" in capsys.readouterr().err
        assert main(["run", path, "-i", "N=10000"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["R=0"]


class TestCheck:
    def test_clean_source(self, capsys, source_file):
        assert main(["check", source_file(QUARTER)]) == EXIT_OK
        captured = capsys.readouterr()
        assert captured.out == ""

    def test_dump_schedule(self, capsys):
        assert main(["check", "quarter", "--dump-schedule"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("module pointInQuarterCircle\n")
        assert "cu3" in out

    def test_dump_graph(self, capsys):
        assert main(["check", "quarter", "--dump-graph"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("graph pointInQuarterCircle\n")

    def test_cycle(self, capsys, source_file):
        path = source_file("m({A : int}, {B : int})\n  method\n    C : int = B;\n"
                           "    B : int = C;\n  end method;\nend;\n")
        assert main(["check", path]) == EXIT_ERROR
        assert "CyclicDependency" in capsys.readouterr().err

    def test_unknown_callee(self, capsys, source_file):
        path = source_file("m({A : int}, {B : int})\n  method\n    call(nowhere, {A}, {B});\n"
                           "  end method;\nend;\n")
        assert main(["check", path]) == EXIT_ERROR
        assert "UnknownModule" in capsys.readouterr().err

    def test_syntax_error_position(self, capsys, source_file):
        path = source_file("m({}, {B : int}) method B : int = 1 end method; end;")
        assert main(["check", path]) == EXIT_ERROR
        assert f"{path}:1:" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["check", "no_such_program.dsp"]) == EXIT_ERROR
        assert "no corpus program" in capsys.readouterr().err


class TestEmitAndBench:
    def test_emit(self, capsys, tmp_path):
        out = tmp_path / "pkg"
        assert main(["emit", "ack", "-o", str(out)]) == EXIT_OK
        assert (out / "ack.py").is_file() and (out / "__init__.py").is_file()
        assert str(out / "ack.py") in capsys.readouterr().out

    @pytest.mark.slow
    def test_bench_single_suite(self, capsys):
        assert main(["bench", "ack", "--trials", "1", "--engine", "vm"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ack" in out and "vm_mean_ms" in out

    def test_bench_rejects_unknown_suite(self, capsys):
        assert main(["bench", "fib"]) == EXIT_ERROR

    def test_parser_requires_a_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_help_exits_cleanly(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "check" in capsys.readouterr().out
