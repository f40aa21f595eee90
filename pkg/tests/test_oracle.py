import random

import pytest

from relforest import Relation
from relforest.lifting import abstract, lift_parent, lift_rank, lower_parent, relational
from relforest.oracle import OracleForest, Partition, oracle_find, oracle_union, partition_of
from relforest.relation import RelationError, fc
from relforest.sampling import all_forests


def test_compress_chain():
    f = OracleForest([1, 2, 2], [0, 0, 0])
    root, g = oracle_find(f, 0, "compress")
    assert root == 2 and g.parent == [2, 2, 2]
    assert f.parent == [1, 2, 2]  # input untouched


@pytest.mark.parametrize("strategy", ["naive", "compress", "split", "halve"])
def test_find_on_root_is_identity(strategy):
    f = OracleForest([1, 2, 2], [0, 0, 0])
    root, g = oracle_find(f, 2, strategy)
    assert root == 2 and g == f


def test_split_and_halve_chain_of_five():
    f = OracleForest([1, 2, 3, 4, 4], [0] * 5)
    assert oracle_find(f, 0, "split")[1].parent == [2, 3, 4, 4, 4]
    assert oracle_find(f, 0, "halve")[1].parent == [2, 2, 4, 4, 4]


def test_union_by_rank_tie():
    g = oracle_union(OracleForest.fresh(4), 0, 1, by_rank=True)
    assert g.parent[1] == 0 and g.rank[0] == 1


def test_union_within_set():
    f = oracle_union(OracleForest.fresh(4), 0, 1)
    assert partition_of(oracle_union(f, 1, 0)) == partition_of(f)


def test_ranks_stay_below_n():
    rng = random.Random(64)
    f = OracleForest.fresh(64)
    for _ in range(1000):
        f = oracle_union(f, rng.randrange(64), rng.randrange(64), by_rank=True)
        assert max(f.rank) < 64
    # union by rank also bounds ranks by log2(n)
    assert max(f.rank) <= 6


def test_bad_inputs():
    with pytest.raises(ValueError):
        OracleForest.fresh(0)
    with pytest.raises(IndexError):
        oracle_find(OracleForest.fresh(3), 3)
    with pytest.raises(ValueError):
        oracle_find(OracleForest.fresh(3), 0, "sideways")


def test_partition_examples():
    assert str(partition_of(OracleForest([0, 1, 2]))) == "{0} {1} {2}"
    assert abstract(Relation.identity(3)) == Partition(((0,), (1,), (2,)))
    assert abstract(Relation.from_pairs(3, [(0, 1), (1, 1), (2, 2)])) == Partition(((0, 1), (2,)))


def test_abstract_rejects_non_forest():
    with pytest.raises(RelationError):
        abstract(Relation.from_pairs(2, [(0, 1), (1, 0)]))


def test_round_trip_on_all_forests_at_four():
    for p in all_forests(4):
        assert relational(abstract(p), 4) == fc(p)
        parent = lower_parent(p)
        assert lift_parent(parent) == p
        assert partition_of(OracleForest(parent)) == abstract(p)


def test_lift_rank_range():
    assert lift_rank([0, 2, 1]).pairs() == [(0, 0), (1, 2), (2, 1)]
    with pytest.raises(RelationError):
        lift_rank([0, 3, 0])
