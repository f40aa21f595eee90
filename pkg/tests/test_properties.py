"""Randomised properties at sizes beyond exhaustive reach, checked against networkx."""

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from relforest import Relation
from relforest.arrays import aread, awrite
from relforest.crossval import Op, lockstep
from relforest.lifting import abstract, relational
from relforest.relation import fc, is_forest, wcc


@st.composite
def relations(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return Relation.from_int(n, draw(st.integers(0, (1 << (n * n)) - 1)))


@st.composite
def forests(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    # parents only point to larger indices or to self, so there are no cycles
    parent = [draw(st.integers(i, n - 1)) for i in range(n)]
    return Relation.from_pairs(n, enumerate(parent))


def graph_of(a):
    g = nx.DiGraph()
    g.add_nodes_from(range(a.n))
    g.add_edges_from(a.pairs())
    return g


@given(relations())
def test_star_is_reachability(a):
    reach = nx.transitive_closure(graph_of(a), reflexive=True)
    assert set(a.star().pairs()) == set(reach.edges())


@given(relations())
def test_wcc_is_weak_components(a):
    expected = set()
    for comp in nx.weakly_connected_components(graph_of(a)):
        expected |= {(i, j) for i in comp for j in comp}
    assert set(wcc(a).pairs()) == expected


@given(forests())
def test_forest_components(p):
    assert is_forest(p)
    assert fc(p) == wcc(p)
    assert relational(abstract(p), p.n) == fc(p)


@given(relations(), st.data())
def test_write_read_on_points(x, data):
    n = x.n
    i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    y, z = Relation.point(n, i), Relation.point(n, j)
    assert aread(awrite(x, y, z), y) == z
    assert awrite(awrite(x, y, z), y, aread(x, y)) == x


@st.composite
def op_sequences(draw):
    n = draw(st.integers(1, 10))
    node = st.integers(0, n - 1)
    op = st.one_of(
        st.builds(lambda i: Op("find", i), node),
        st.builds(lambda i, j: Op("union", i, j), node, node),
    )
    return n, draw(st.lists(op, max_size=40))


@settings(max_examples=60, deadline=None)
@given(op_sequences(), st.sampled_from(["naive", "compress", "split", "halve"]), st.booleans())
def test_engines_agree(seq, strategy, by_rank):
    n, ops = seq
    result = lockstep(n, ops, strategy, by_rank)
    assert result.ok, result.divergence
