import math

import pytest

from dspc.errors import (
    CommitDepthFault,
    DivisionByZero,
    DomainFault,
    DtypeFault,
    EmptyCellRead,
    NonPositiveStep,
    StaleCellRead,
)
from dspc.frontend import parse_expression
from dspc.runtime import (
    EMPTY,
    FAILURE,
    SUCCESS,
    VM,
    Alternatives,
    BuiltinFor,
    BuiltinSelect,
    Commit,
    VarCell,
    coerce,
    eval_expr,
    find_all,
)
from dspc.runtime.cells import StaleLog
from dspc.runtime.primitives import dcall_module
from dspc.runtime.values import nth, remove, sqrt


def drain(vm, goal, cell):
    values = []
    found = vm.call(goal)
    while found:
        values.append(cell.value)
        found = vm.redo()
    return values


def enumerate_for(vm, b, e, s, real=False):
    cell = vm.new_cell()
    return drain(vm, BuiltinFor(real).invoke([b, e, s], [cell], SUCCESS), cell)


class TestValues:
    def test_sqrt_of_sum_of_squares(self):
        assert eval_expr(parse_expression("sqrt(1.0^2 + 1.0^2)"), {}) == 1.4142135623730951

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            eval_expr(parse_expression("1 / 0"), {})

    def test_division_is_real(self):
        assert eval_expr(parse_expression("7 / 2"), {}) == 3.5

    def test_domain_faults(self):
        with pytest.raises(DomainFault):
            sqrt(-1.0)
        with pytest.raises(DomainFault):
            eval_expr(parse_expression("(-8.0) ^ 0.5"), {})
        with pytest.raises(DomainFault):
            nth((1, 2), 3)

    def test_mixed_arithmetic_promotes(self):
        assert eval_expr(parse_expression("A + 1"), {"A": 1.5}) == 2.5
        assert eval_expr(parse_expression("min(3, 1.0)"), {}) == 1.0
        assert isinstance(eval_expr(parse_expression("max(3, 1)"), {}), int)

    def test_list_functions(self):
        env = {"L": (3, 1, 3)}
        assert eval_expr(parse_expression("remove(L, 3)"), env) == (1, 3)
        assert eval_expr(parse_expression("cons(0, tail(L))"), env) == (0, 1, 3)
        assert eval_expr(parse_expression("nth(L, 2) + len(L)"), env) == 4
        assert remove((1, 2), 5) == (1, 2)

    def test_coerce(self):
        assert coerce(2, "real") == 2.0 and isinstance(coerce(2, "real"), float)
        with pytest.raises(DtypeFault):
            coerce(True, "int")
        with pytest.raises(DtypeFault):
            coerce(2.5, "int")

    def test_unbound_name(self):
        with pytest.raises(EmptyCellRead):
            eval_expr(parse_expression("Z + 1"), {})


class TestGenerators:
    def test_real_for(self, settings):
        assert enumerate_for(VM(settings), 0.0, 2.0, 1.0) == [0.0, 1.0, 2.0]

    def test_real_for_keeps_endpoint(self, settings):
        values = enumerate_for(VM(settings), 0.0, 1.0, 0.1)
        assert len(values) == 11
        assert math.isclose(values[-1], 1.0)

    def test_real_for_stops_below_end(self, settings):
        values = enumerate_for(VM(settings), 0.0, 1.0, 0.3)
        assert len(values) == 4
        assert math.isclose(values[-1], 0.9)

    def test_int_for_is_exact(self, settings):
        assert enumerate_for(VM(settings), 1, 5, 2) == [1, 3, 5]

    def test_for_converts_to_real(self, settings):
        values = enumerate_for(VM(settings), 0, 2, 1, real=True)
        assert values == [0.0, 1.0, 2.0] and all(isinstance(v, float) for v in values)

    def test_empty_range(self, settings):
        assert enumerate_for(VM(settings), 0.0, -1.0, 1.0) == []

    def test_non_positive_step(self, settings):
        with pytest.raises(NonPositiveStep):
            enumerate_for(VM(settings), 0, 3, 0)

    def test_select(self, settings):
        vm = VM(settings)
        cell = vm.new_cell()
        assert drain(vm, BuiltinSelect().invoke([(1, 2, 3)], [cell], SUCCESS), cell) == [1, 2, 3]

    def test_select_coerces_elements(self, settings):
        vm = VM(settings)
        cell = vm.new_cell()
        goal = BuiltinSelect("real").invoke([(1, 2)], [cell], SUCCESS)
        assert drain(vm, goal, cell) == [1.0, 2.0]

    def test_select_single_element(self, settings):
        vm = VM(settings)
        cell = vm.new_cell()
        assert drain(vm, BuiltinSelect().invoke([(7,)], [cell], SUCCESS), cell) == [7]
        assert vm.pushes == 0

    def test_select_empty_list(self, settings):
        vm = VM(settings)
        cell = vm.new_cell()
        assert drain(vm, BuiltinSelect().invoke([()], [cell], SUCCESS), cell) == []

    def test_last_value_leaves_no_choice_point(self, settings):
        vm = VM(settings)
        enumerate_for(vm, 1, 3, 1)
        assert vm.depth == 0
        assert vm.pushes == vm.pops == 2


class TestControl:
    def test_alternatives_in_order(self, settings):
        vm = VM(settings)
        cell = vm.new_cell()

        def method(value):
            def factory(arg):
                cell.value = value
                return arg
            return factory

        goal = Alternatives([method("a"), method("b"), method("c")], SUCCESS)
        assert drain(vm, goal, cell) == ["a", "b", "c"]

    def test_dcall_commits_first_solution(self, settings):
        vm = VM(settings)
        cell = vm.new_cell()
        goal = dcall_module(vm, BuiltinFor(), [1, 5, 1], [cell], SUCCESS)
        assert drain(vm, goal, cell) == [1]
        assert vm.depth == 0 and vm.commits == 1

    def test_dcall_inside_choice_point_keeps_outer(self, settings):
        vm = VM(settings)
        outer = vm.new_cell()
        inner = vm.new_cell()
        seen = []

        class Record:
            def exec(self, vm):
                seen.append((outer.value, inner.value))
                return SUCCESS

        class Inner:
            def exec(self, vm):
                return dcall_module(vm, BuiltinFor(), [10, 20, 1], [inner], Record())

        goal = BuiltinFor().invoke([1, 2, 1], [outer], Inner())
        drain(vm, goal, outer)
        assert seen == [(1, 10), (2, 10)]

    def test_find_collects_in_order(self, settings):
        vm = VM(settings)
        target = vm.new_cell()
        goal = find_all(vm, BuiltinFor(), [1, 4, 1], 1, target, SUCCESS)
        assert drain(vm, goal, target) == [(1, 2, 3, 4)]

    def test_find_of_nothing(self, settings):
        vm = VM(settings)
        target = vm.new_cell()
        goal = find_all(vm, BuiltinFor(), [5, 4, 1], 1, target, SUCCESS)
        assert drain(vm, goal, target) == [()]

    def test_failure_with_empty_stack_ends_the_run(self, settings):
        vm = VM(settings)
        assert vm.call(FAILURE) is False

    def test_stats(self, settings):
        vm = VM(settings)
        enumerate_for(vm, 1, 3, 1)
        stats = vm.stats()
        assert stats.solutions == 3
        assert stats.peak_depth == 1
        assert stats.exec_steps > 0


class TestCells:
    def test_empty_cell(self):
        cell = VarCell()
        assert cell.value is EMPTY
        with pytest.raises(EmptyCellRead):
            cell.get()

    def test_stale_log_merges(self):
        log = StaleLog()
        log.add(5, 8)
        log.add(2, 9)
        log.add(12, 14)
        assert log.intervals() == [(2, 9), (12, 14)]
        assert 3 in log and 9 in log and 13 in log
        assert 2 not in log and 10 not in log

    def test_stale_read(self, audit_settings):
        vm = VM(audit_settings)
        before = vm.new_cell()
        before.value = 1
        cell = vm.new_cell()
        vm.push(FAILURE)
        cell.value = 2
        vm.pop()
        assert before.value == 1
        with pytest.raises(StaleCellRead):
            cell.value
        cell.value = 3
        assert cell.value == 3

    def test_commit_below_entry_depth(self, audit_settings):
        vm = VM(audit_settings)
        with pytest.raises(CommitDepthFault):
            Commit(2, SUCCESS).exec(vm)

    def test_audited_run_matches_plain(self, settings, audit_settings):
        plain = enumerate_for(VM(settings), 0.0, 3.0, 0.5)
        audited = enumerate_for(VM(audit_settings), 0.0, 3.0, 0.5)
        assert plain == audited
