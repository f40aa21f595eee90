import pytest

from relforest import Relation
from relforest.assertions import Assertion, MissingBindingError, eval_assertion, free_variables
from relforest.programs import ForestState, find_path_halving, run_checked
from relforest.trace import (
    AssertionViolation,
    Execution,
    VariantViolation,
    format_trace,
    parse_trace,
)

from conftest import chain

GOLDEN_FIND_SET = """\
relforest-trace 1
program find_set
mode strict
check pre find_set find_set_pre ok
step find_set#1 iter=1 variant=3->2 find_set_inv=ok
  p = 010/001/001
  x = 111/000/000
  y = 111/000/000
step find_set#1 iter=2 variant=2->1 find_set_inv=ok
  p = 010/001/001
  x = 111/000/000
  y = 000/111/000
check exit find_set#1 find_set_inv ok
check post find_set find_set_post ok
final ok
"""


def test_golden_find_set(chain3):
    _, trace = run_checked("find_set", {"p": chain3, "x": Relation.point(3, 0)})
    assert format_trace(trace, dumps=True) == GOLDEN_FIND_SET


def test_parse_round_trip(chain3):
    parsed = parse_trace(GOLDEN_FIND_SET)
    assert parsed["program"] == "find_set" and parsed["final"] is True
    assert [s["variant"] for s in parsed["steps"]] == [3, 2]
    assert parsed["steps"][-1]["variant_after"] == 1
    assert parsed["checks"][0] == {"kind": "pre", "where": "find_set", "name": "find_set_pre", "ok": True}


def test_parse_rejects_other_formats():
    with pytest.raises(ValueError):
        parse_trace("relforest-trace 2\n")
    with pytest.raises(ValueError):
        parse_trace("relforest-trace 1\nbogus line\n")


def test_init_sets_trace_has_four_steps():
    _, trace = run_checked("init_sets", {"n": 4})
    steps = parse_trace(format_trace(trace))["steps"]
    assert len(steps) == 4
    assert [s["variant"] for s in steps] == [4, 3, 2, 1]
    assert all(all(s["verdicts"].values()) for s in steps)


def test_halving_invariant_holds_each_iteration():
    _, trace = run_checked("find_path_halving", {"p": chain(5), "x": Relation.point(5, 0)})
    assert len(trace.steps) == 2
    for step in trace.steps:
        assert step.verdicts == {"path_halving_inv": True, "path_halving_facts": True}


def test_trace_mode_records_failures_without_raising(chain3):
    # y is not the root, so the precondition of path compression fails
    inputs = {"p": chain3, "x": Relation.point(3, 0), "y": Relation.point(3, 1)}
    with pytest.raises(AssertionViolation) as info:
        run_checked("path_compression", inputs)
    assert info.value.name == "path_compression_pre"
    _, trace = run_checked("path_compression", inputs, mode="trace")
    assert not trace.passed
    assert "pre path_compression path_compression_pre" in trace.failures()
    assert format_trace(trace).endswith("final FAIL\n")


def test_unchecked_mode_records_nothing(chain3):
    y, _ = find_path_halving(ForestState(chain3), Relation.point(3, 0), mode="unchecked")
    assert y == Relation.point(3, 2)


def test_variant_must_decrease():
    ex = Execution("toy")
    loop = ex.loop("toy", (), lambda b: 5, cap=10)
    assert loop.head(True)
    with pytest.raises(VariantViolation):
        loop.head(True)


def test_bad_mode():
    with pytest.raises(ValueError):
        Execution("toy", "lenient")


def test_assertion_bindings():
    assert free_variables(Assertion.FIND_SET_POST) == ("p", "x", "y")
    with pytest.raises(MissingBindingError):
        eval_assertion(Assertion.FIND_SET_POST, {"p": Relation.identity(2)})
