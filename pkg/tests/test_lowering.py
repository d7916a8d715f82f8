import pytest

from brute_force import quarter_points
from conftest import QUARTER, outputs
from dspc.analyzer import analyze_program
from dspc.errors import LinkError
from dspc.frontend import parse_source
from dspc.lowering import format_graph, link, lower
from dspc.pipeline import Compiler, drive
from dspc.runtime import SUCCESS, VM
from dspc.scheduler import schedule_program

VERIFY_QUARTER = QUARTER.replace("test(D =< R);", "verify(D =< R);")


def lowered(source):
    scheduled = schedule_program(analyze_program(parse_source(source)))
    registry = {name: m.decl for name, m in scheduled.items()}
    return [lower(m, registry) for m in scheduled.values()]


class TestGraph:
    def test_one_node_per_unit(self):
        (graph,) = lowered(QUARTER)
        (method,) = graph.methods
        assert [u.index for u in method.units] == [1, 2, 3]
        assert method.layout == ("R", "X", "Y", "D")
        assert method.n_inputs == 1 and method.n_outputs == 2

    def test_dump(self):
        (graph,) = lowered(QUARTER)
        lines = format_graph(graph).splitlines()
        assert lines[0] == "graph pointInQuarterCircle"
        assert lines[1] == "  method 1: 3 node(s)"
        assert lines[2] == "    layout 0:R (value), 1:X (output cell), 2:Y (output cell), 3:D (cell)"
        assert lines[3] == "    entry: - => X : real = for(0.0, R, 1.0); -> cu2"
        assert lines[4] == "    cu2: - => Y : real = for(0.0, R, 1.0); -> cu3"
        assert lines[5] == "    cu3: D : real = sqrt(X ^ 2 + Y ^ 2); test(D =< R); => return"

    def test_dcall_splits_a_unit(self):
        source = ("m({N : int}, {K : int})\n  method\n"
                  "    dcall(for, {1, N, 1}, {K});\n    test(K > 0);\n"
                  "  end method;\nend;\n")
        (graph,) = lowered(source)
        (unit,) = graph.methods[0].units
        assert len(unit.segments) == 2
        assert unit.segments[0].tail_label.endswith("-> entry.1")

    def test_missing_callee_fails_to_link(self):
        source = ("m({A : int}, {B : int})\n  method\n    call(k, {A}, {B});\n  end method;\nend;\n"
                  "k({A : int}, {B : int})\n  method\n    B : int = A;\n  end method;\nend;\n")
        graphs = {g.name: g for g in lowered(source)}
        with pytest.raises(LinkError) as info:
            link([graphs["m"]])
        assert info.value.missing == ["k"]

    def test_builtins_link_without_modules(self):
        source = ("m({N : int}, {L : list})\n  method\n"
                  "    find(for, {1, N, 1}, L);\n  end method;\nend;\n")
        program = link(lowered(source))
        assert program.names == ["m"]

    def test_linking_leaves_graphs_untouched(self, settings):
        def graphs(value):
            source = ("a({}, {X : int})\n  method\n    call(b, {}, {X});\n  end method;\nend;\n"
                      f"b({{}}, {{X : int}}) method X : int = {value}; end method; end;")
            return {g.name: g for g in lowered(source)}

        first, second = graphs(1), graphs(2)
        one = link([first["a"], first["b"]])
        two = link([first["a"], second["b"]])

        def run(program):
            vm = VM(settings)
            cell = vm.new_cell()
            goal = program.invoke(vm, "a", [], [cell], SUCCESS)
            return [s.outputs["X"] for s in drive(vm, goal, ["X"], [cell])]

        assert run(one) == [1]
        assert run(two) == [2]
        assert run(one) == [1]


class TestSolving:
    def test_quarter_circle(self, compiler):
        program = compiler.compile_source(QUARTER)
        found = outputs(compiler.solutions(program, "pointInQuarterCircle", {"R": 2.0}))
        assert found == quarter_points(2.0)
        assert len(found) == 6

    def test_no_solution(self, compiler):
        program = compiler.compile_source(QUARTER)
        assert list(compiler.solutions(program, "pointInQuarterCircle", {"R": -1.0})) == []

    def test_verify_flags_without_pruning(self, compiler):
        program = compiler.compile_source(VERIFY_QUARTER)
        solutions = list(compiler.solutions(program, "pointInQuarterCircle", {"R": 2.0}))
        assert len(solutions) == 9
        flagged = [tuple(s.outputs.values()) for s in solutions if s.violations]
        assert flagged == [(1.0, 2.0), (2.0, 1.0), (2.0, 2.0)]

    def test_violations_belong_to_their_path(self, compiler):
        program = compiler.compile_source(VERIFY_QUARTER)
        for solution in compiler.solutions(program, "pointInQuarterCircle", {"R": 2.0}):
            assert len(solution.violations) <= 1
            for violation in solution.violations:
                assert violation.condition == "D =< R"
                assert violation.method == "pointInQuarterCircle/1"
                assert violation.bindings["X"] == solution.outputs["X"]
                assert violation.bindings["Y"] == solution.outputs["Y"]

    def test_for_module_shadows_builtin(self, corpus, compiler):
        program = corpus("for")
        found = outputs(compiler.solutions(program, "for", {"B": 0.0, "E": 1.0, "S": 0.25}))
        assert found == [(0.0,), (0.25,), (0.5,), (0.75,), (1.0,)]

    def test_int_inputs_promote_to_real(self, corpus, compiler):
        program = corpus("for")
        found = outputs(compiler.solutions(program, "for", {"B": 1, "E": 3, "S": 1}))
        assert found == [(1.0,), (2.0,), (3.0,)]


class TestAudit:
    @pytest.mark.parametrize("name, module, inputs", [
        ("quarter", "pointInQuarterCircle", {"R": 3.0}),
        ("plan", "plan", {"Width": 60.0, "Depth": 40.0, "Stories": 3}),
        ("nqueens", "nqueens", {"N": 6}),
        ("ack", "ack", {"M": 2, "N": 2}),
        ("ack_nocut", "ack_nocut", {"M": 2, "N": 2}),
        ("tarai", "tarai", {"X": 6, "Y": 3, "Z": 0}),
    ])
    def test_corpus_runs_clean(self, corpus, settings, audit_settings, name, module, inputs):
        program = corpus(name)
        plain = outputs(Compiler(settings).solutions(program, module, inputs))
        audited = outputs(Compiler(audit_settings).solutions(program, module, inputs))
        assert audited == plain and plain


class TestStackDepth:
    def peak(self, corpus, compiler, name, m, n):
        vm = VM(compiler.settings)
        program = corpus(name)
        assert len(list(compiler.solutions(program, name, {"M": m, "N": n}, vm=vm))) == 1
        return vm.stats().peak_depth

    def test_dcall_keeps_depth_bounded(self, corpus, compiler):
        depths = [self.peak(corpus, compiler, "ack", 2, n) for n in (1, 2, 3)]
        assert len(set(depths)) == 1

    def test_plain_call_grows(self, corpus, compiler):
        depths = [self.peak(corpus, compiler, "ack_nocut", 2, n) for n in (1, 2, 3)]
        assert depths[0] < depths[1] < depths[2]
        assert depths[0] > self.peak(corpus, compiler, "ack", 2, 1)
