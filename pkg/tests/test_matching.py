import pytest
from hypothesis import given

from lccontrol.generators import chain_graph, cycle_graph, star_graph
from lccontrol.graph import DiGraph, bipartite_repr
from lccontrol.matching import (
    Matching,
    hopcroft_karp,
    max_matching_leaving_unmatched,
    mlr,
    mlr_complete,
)

from conftest import digraphs, unmatched_sets


def test_hopcroft_karp_examples():
    assert len(hopcroft_karp(bipartite_repr(cycle_graph(3)))) == 3
    m = hopcroft_karp(bipartite_repr(chain_graph(5)))
    assert len(m) == 4 and m.unmatched_minus() == (0,)
    m = hopcroft_karp(bipartite_repr(star_graph(4)))
    assert len(m) == 1 and len(m.unmatched_minus()) == 3


@given(digraphs())
def test_hopcroft_karp_is_maximum(g):
    best = g.n - min(len(s) for s in unmatched_sets(g))
    m = hopcroft_karp(bipartite_repr(g))
    assert len(m) == best
    assert all(e in set(g.links) for e in m.edges)


def test_matching_rejects_shared_endpoint():
    with pytest.raises(ValueError):
        Matching(3, ((0, 1), (0, 2)))


def test_leaving_unmatched_examples():
    b = bipartite_repr(chain_graph(3))
    assert max_matching_leaving_unmatched(b, {0})
    assert not max_matching_leaving_unmatched(b, {1})
    assert max_matching_leaving_unmatched(bipartite_repr(cycle_graph(3)), set())


@given(digraphs(max_n=6))
def test_leaving_unmatched_matches_enumeration(g):
    b = bipartite_repr(g)
    reachable = unmatched_sets(g)
    for mask in range(1 << g.n):
        s = {v for v in range(g.n) if mask >> v & 1}
        # some matching leaves exactly s unmatched iff one leaves a subset of s unmatched
        expect = any(u <= s for u in reachable)
        assert max_matching_leaving_unmatched(b, s) == expect


def test_mlr_chain_and_star():
    res = mlr(bipartite_repr(chain_graph(5)))
    assert not res.m_core_edges and len(res.matching) == 4
    res = mlr(bipartite_repr(star_graph(4)))
    assert not res.m_core_edges
    assert len(res.forced_unmatched) == 2
    assert len(res.matching) == len(hopcroft_karp(bipartite_repr(star_graph(4))))


def test_mlr_cycle_has_no_core():
    # each plus copy of a directed cycle has exactly one neighbour, so every edge is a leaf
    res = mlr(bipartite_repr(cycle_graph(3)))
    assert not res.m_core_edges and len(res.matching) == 3


def test_mlr_core_on_bidirected_square():
    g = DiGraph(4, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0), (0, 3)])
    res = mlr(bipartite_repr(g))
    assert len(res.m_core_edges) == 8 and len(res.matching) == 0


@given(digraphs())
def test_mlr_core_free_is_maximum(g):
    b = bipartite_repr(g)
    res = mlr(b)
    if not res.m_core_edges:
        assert len(res.matching) == len(hopcroft_karp(b))


def test_mlr_complete_examples():
    for seed in range(5):
        assert len(mlr_complete(bipartite_repr(cycle_graph(3)), seed)) == 3
        assert len(mlr_complete(bipartite_repr(chain_graph(5)), seed)) == 4
    assert len(mlr_complete(bipartite_repr(DiGraph(3)), 0)) == 0


@given(digraphs())
def test_mlr_complete_is_maximal(g):
    m = mlr_complete(bipartite_repr(g), 1)
    plus = {p for p, _ in m.edges}
    minus = {q for _, q in m.edges}
    assert all(t in plus or h in minus for t, h in g.links)
