import pytest

from conftest import QUARTER, outputs
from dspc.errors import InputError, NonPositiveStep
from dspc.oracle import enumerate_for, oracle_solve
from dspc.pipeline import solve

CASES = [
    ("quarter", "pointInQuarterCircle", {"R": 3.0}),
    ("for", "for", {"B": 0.0, "E": 2.0, "S": 0.5}),
    ("plan", "plan", {"Width": 60.0, "Depth": 40.0, "Stories": 3}),
    ("nqueens", "nqueens", {"N": 4}),
    ("nqueens", "nqueens", {"N": 6}),
    pytest.param("nqueens", "nqueens", {"N": 8}, marks=pytest.mark.slow),
    ("ack", "ack", {"M": 2, "N": 3}),
    ("ack_nocut", "ack_nocut", {"M": 2, "N": 3}),
    pytest.param("ack", "ack", {"M": 3, "N": 3}, marks=pytest.mark.slow),
    pytest.param("ack_nocut", "ack_nocut", {"M": 3, "N": 3}, marks=pytest.mark.slow),
    ("tarai", "tarai", {"X": 6, "Y": 3, "Z": 0}),
    ("tarai_nocut", "tarai_nocut", {"X": 6, "Y": 3, "Z": 0}),
    pytest.param("tarai", "tarai", {"X": 10, "Y": 5, "Z": 0}, marks=pytest.mark.slow),
    pytest.param("tarai_nocut", "tarai_nocut", {"X": 10, "Y": 5, "Z": 0}, marks=pytest.mark.slow),
]


def conditions(solutions):
    return [[v.condition for v in s.violations] for s in solutions]


class TestAgreement:
    @pytest.mark.parametrize("name, module, inputs", CASES)
    def test_same_solutions_in_same_order(self, corpus, compiler, name, module, inputs):
        program = corpus(name)
        vm = list(compiler.solutions(program, module, inputs, "vm"))
        oracle = list(compiler.solutions(program, module, inputs, "oracle"))
        assert outputs(vm) == outputs(oracle)
        assert conditions(vm) == conditions(oracle)
        assert [s.to_jsonl() for s in vm] == [s.to_jsonl() for s in oracle]

    def test_verify_bindings_agree(self):
        source = QUARTER.replace("test(D =< R);", "verify(D =< R);")
        vm = solve(source, "pointInQuarterCircle", {"R": 2.0})
        oracle = solve(source, "pointInQuarterCircle", {"R": 2.0}, engine="oracle")
        assert [s.violations for s in vm] == [s.violations for s in oracle]

    def test_dcall_keeps_first_solution(self):
        source = ("m({}, {K : int})\n  method\n    dcall(for, {3, 9, 2}, {K});\n"
                  "  end method;\nend;\n")
        assert outputs(solve(source, "m", {}, engine="oracle")) == [(3,)]

    def test_find_of_module_with_two_outputs(self):
        source = ("pairs({}, {A : int, B : int})\n  method\n"
                  "    A : int = for(1, 2, 1);\n    B : int = A * 10;\n  end method;\nend;\n"
                  "m({}, {L : list})\n  method\n    find(pairs, {}, L);\n  end method;\nend;\n")
        for engine in ("vm", "oracle"):
            assert outputs(solve(source, "m", {}, engine=engine)) == [(((1, 10), (2, 20)),)]

    def test_unknown_engine(self):
        with pytest.raises(InputError):
            solve(QUARTER, "pointInQuarterCircle", {"R": 1.0}, engine="prolog")


class TestOracleParts:
    def test_enumerate_for(self):
        assert list(enumerate_for(1, 7, 3, 1e-9)) == [1, 4, 7]
        assert len(list(enumerate_for(0.0, 1.0, 0.1, 1e-9))) == 11

    def test_enumerate_for_step(self):
        with pytest.raises(NonPositiveStep):
            list(enumerate_for(1, 7, -1, 1e-9))

    def test_oracle_solve_is_lazy(self, corpus, settings):
        program = corpus("nqueens")
        stream = oracle_solve(program.scheduled["nqueens"], {"N": 8}, program.scheduled, settings)
        first = next(stream)
        assert len(first.outputs["Qs"]) == 8
