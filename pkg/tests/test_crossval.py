import random

import pytest

from relforest.crossval import Op, crossvalidate, format_result, lockstep, random_ops
from relforest.mutants import apply_mutant


def test_op_round_trip():
    for text in ("find 3", "union 0 5"):
        assert str(Op.parse(text)) == text
    with pytest.raises(ValueError):
        Op.parse("union 1")


def test_random_ops_are_seeded():
    a = random_ops(8, 50, random.Random(1))
    b = random_ops(8, 50, random.Random(1))
    assert a == b
    assert {op.kind for op in a} == {"find", "union"}


def test_by_rank_example_run():
    result = crossvalidate(16, 500, "compress", True, 7)
    assert result.ok and result.executed == 500
    assert 0 < result.max_rank < 16


@pytest.mark.parametrize("by_rank", [False, True])
def test_single_node(by_rank):
    result = crossvalidate(1, 100, "halve", by_rank, 3)
    assert result.ok and result.executed == 100 and result.max_rank == 0


def test_report_is_deterministic():
    a = format_result(crossvalidate(8, 200, "split", True, 11), 11)
    b = format_result(crossvalidate(8, 200, "split", True, 11), 11)
    assert a == b
    assert a.splitlines()[0] == "crossvalidate n=8 ops=200 strategy=split union=by-rank seed=11"
    assert a.splitlines()[-1] == "divergences 0"


def test_skipped_rank_increment_is_caught_and_shrunk():
    with apply_mutant("oracle-skip-rank-increment"):
        result = crossvalidate(8, 300, "compress", True, 7)
        assert not result.ok
        assert result.divergence.aspect == "rank"
        # the reproducer alone still diverges, and a single tie union suffices
        assert not lockstep(8, result.reproducer, "compress", True).ok
        assert len(result.reproducer) == 1
        text = format_result(result, 7)
    assert "DIVERGENCE" in text and "reproducer union" in text


def test_swapped_link_is_caught():
    with apply_mutant("union-swapped-link"):
        result = crossvalidate(8, 300, "naive", False, 2)
    assert not result.ok and result.divergence.aspect in ("parent", "root")
