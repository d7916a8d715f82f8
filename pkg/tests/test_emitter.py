import ast

import pytest

from conftest import QUARTER
from dspc.emitter import class_name, emit, file_name, py_name
from dspc.errors import EmitError

EQUIVALENCE = [
    ("quarter", "pointInQuarterCircle", {"R": 3.0}),
    ("for", "for", {"B": 0.0, "E": 1.0, "S": 0.25}),
    ("plan", "plan", {"Width": 60.0, "Depth": 40.0, "Stories": 3}),
    ("nqueens", "nqueens", {"N": 6}),
    ("ack", "ack", {"M": 2, "N": 2}),
    ("tarai_nocut", "tarai_nocut", {"X": 6, "Y": 3, "Z": 0}),
]


def jsonl(solutions):
    return [s.to_jsonl() for s in solutions]


class TestNames:
    def test_plain_names_pass_through(self):
        assert py_name("X") == "X"
        assert class_name("nqueens") == "Nqueens"
        assert file_name("nqueens") == "nqueens"

    @pytest.mark.parametrize("name", ["self", "cont", "value", "class", "cu2", "Method_1", "METHODS"])
    def test_reserved_names_are_prefixed(self, name):
        assert py_name(name) == f"dsp_{name}"

    def test_keyword_module(self):
        assert file_name("for") == "dsp_for"
        assert class_name("for") == "For"

    def test_colliding_classes(self, compiler):
        source = ("a({}, {X : int})\n  method\n    X : int = 1;\n  end method;\nend;\n"
                  "A({}, {X : int})\n  method\n    X : int = 2;\n  end method;\nend;\n")
        program = compiler.compile_source(source)
        with pytest.raises(EmitError, match="same Python class"):
            emit(program.scheduled["a"], program.modules)


class TestSource:
    def test_emitted_source_parses(self, corpus):
        program = corpus("nqueens")
        for name, module in program.scheduled.items():
            tree = ast.parse(emit(module, program.modules))
            classes = [n.name for n in tree.body if isinstance(n, ast.ClassDef)]
            assert classes == [class_name(name)]

    def test_header_names_signature(self, compiler):
        program = compiler.compile_source(QUARTER, "quarter.dsp")
        text = emit(program.scheduled["pointInQuarterCircle"], program.modules)
        assert text.startswith('"""pointInQuarterCircle({R : real}, {X : real, Y : real})')
        assert "Generated by dspc from quarter.dsp" in text
        assert "class PointInQuarterCircle:" in text
        assert "class Method_1_cu2:" in text

    def test_emission_is_deterministic(self, corpus):
        program = corpus("plan")
        for module in program.scheduled.values():
            assert emit(module, program.modules) == emit(module, program.modules)

    def test_package_layout(self, corpus, compiler, tmp_path):
        written = compiler.emit(corpus("nqueens"), tmp_path)
        assert sorted(p.name for p in written) == [
            "__init__.py", "nqueens.py", "place.py", "requirements.txt", "safe.py",
        ]
        package = compiler.load_emitted(tmp_path)
        assert sorted(package.MODULES) == ["nqueens", "place", "safe"]


class TestEquivalence:
    @pytest.mark.parametrize("name, module, inputs", EQUIVALENCE)
    def test_emitted_matches_vm(self, corpus, compiler, tmp_path, name, module, inputs):
        program = corpus(name)
        compiler.emit(program, tmp_path)
        package = compiler.load_emitted(tmp_path)
        expected = jsonl(compiler.solutions(program, module, inputs))
        assert jsonl(compiler.emitted_solutions(program, package, module, inputs)) == expected
        assert expected

    def test_verify_matches_vm(self, compiler, tmp_path):
        source = QUARTER.replace("test(D =< R);", "verify(D =< R);")
        program = compiler.compile_source(source)
        compiler.emit(program, tmp_path)
        package = compiler.load_emitted(tmp_path)
        inputs = {"R": 2.0}
        emitted = list(compiler.emitted_solutions(program, package, "pointInQuarterCircle", inputs))
        assert sum(1 for s in emitted if s.violations) == 3
        assert jsonl(emitted) == jsonl(compiler.solutions(program, "pointInQuarterCircle", inputs))

    def test_keyword_module_runs(self, compiler, tmp_path):
        source = ("lambda({N : int}, {K : int})\n  method\n    K : int = for(1, N, 1);\n"
                  "  end method;\nend;\n"
                  "m({}, {L : list})\n  method\n    find(lambda, {3}, L);\n  end method;\nend;\n")
        program = compiler.compile_source(source)
        written = compiler.emit(program, tmp_path)
        assert tmp_path / "dsp_lambda.py" in written
        package = compiler.load_emitted(tmp_path)
        assert package.MODULES["lambda"].__name__ == "Lambda"
        found = list(compiler.emitted_solutions(program, package, "m", {}))
        assert [s.outputs["L"] for s in found] == [(1, 2, 3)]

    def test_mangled_variable_names_run(self, compiler, tmp_path):
        source = ("m({self : int}, {value : int})\n  method\n"
                  "    cont : int = for(1, self, 1);\n    value : int = cont * 2;\n"
                  "  end method;\nend;\n")
        program = compiler.compile_source(source)
        compiler.emit(program, tmp_path)
        package = compiler.load_emitted(tmp_path)
        found = [s.outputs["value"]
                 for s in compiler.emitted_solutions(program, package, "m", {"self": 3})]
        assert found == [2, 4, 6]

    def test_parameter_named_like_method_table(self, compiler, tmp_path):
        source = ("m({METHODS : int}, {X : int})\n"
                  "  method\n    X : int = METHODS;\n  end method;\n"
                  "  method\n    X : int = METHODS + 1;\n  end method;\nend;\n")
        program = compiler.compile_source(source)
        compiler.emit(program, tmp_path)
        package = compiler.load_emitted(tmp_path)
        inputs = {"METHODS": 5}
        found = [s.outputs["X"] for s in compiler.emitted_solutions(program, package, "m", inputs)]
        assert found == [5, 6]
        assert found == [s.outputs["X"] for s in compiler.solutions(program, "m", inputs)]
