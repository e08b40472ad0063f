import math

import pytest
from hypothesis import given

from lccontrol.generators import chain_graph, cycle_graph
from lccontrol.graph import (
    INF,
    DiGraph,
    EmptyInputSet,
    GraphError,
    IdOutOfRange,
    ParseError,
    accessibility_graph,
    bipartite_repr,
    lcc_length,
    read_edge_list,
    sources,
    write_edge_list,
)

from conftest import digraphs, distances_from


def test_links_are_deduplicated_and_sorted():
    g = DiGraph(3, [(1, 2), (0, 1), (1, 2)])
    assert g.links == ((0, 1), (1, 2))
    assert g == chain_graph(3)
    assert hash(g) == hash(chain_graph(3))


def test_self_loop_needs_flag():
    with pytest.raises(GraphError):
        DiGraph(2, [(0, 0)])
    g = DiGraph(2, [(0, 0)], allow_self_loops=True)
    assert g.has_self_loops()
    assert g.without_self_loops().n_links == 0


def test_out_of_range_id():
    with pytest.raises(IdOutOfRange):
        DiGraph(2, [(0, 2)])


def test_bipartite_chain():
    b = bipartite_repr(chain_graph(3))
    assert set(b.edges) == {(0, 1), (1, 2)}


def test_bipartite_self_loop_and_empty():
    b = bipartite_repr(DiGraph(1, [(0, 0)], allow_self_loops=True))
    assert set(b.edges) == {(0, 0)}
    b = bipartite_repr(DiGraph(3))
    assert b.n == 3 and not b.edges


def test_accessibility_chain():
    g = chain_graph(3)
    assert set(accessibility_graph(g, 2).links) == {(0, 1), (0, 2), (1, 2)}
    assert accessibility_graph(g, INF) == accessibility_graph(g, 2)


@given(digraphs(self_loops=True))
def test_accessibility_one_step_is_graph(g):
    assert accessibility_graph(g, 1) == g.without_self_loops()


@given(digraphs(max_n=7))
def test_accessibility_matches_bfs(g):
    for ell in (1, 2, 3, INF):
        gl = accessibility_graph(g, ell)
        for v in range(g.n):
            dist = distances_from(g, [v])
            expect = {w for w in range(g.n) if w != v and dist[w] < math.inf and dist[w] <= ell}
            assert set(gl.successors(v)) == expect


def test_lcc_length_examples():
    assert lcc_length(chain_graph(5), [0]) == 4
    assert lcc_length(chain_graph(5), range(5)) == 0
    assert lcc_length(DiGraph(2), [0]) is None
    with pytest.raises(EmptyInputSet):
        lcc_length(chain_graph(2), [])


def test_sources():
    assert sources(chain_graph(3)) == (0,)
    assert sources(cycle_graph(3)) == ()
    assert sources(DiGraph(2)) == (0, 1)


def test_read_edge_list():
    assert read_edge_list("0 1\n1 2") == chain_graph(3)
    g = read_edge_list("# c\n0 0", allow_self_loops=True)
    assert g.links == ((0, 0),)
    with pytest.raises(ParseError) as err:
        read_edge_list("0 x")
    assert err.value.line == 1


def test_read_edge_list_header_and_one_based():
    g = read_edge_list("n=4\n1 2\n", one_based=True)
    assert g.n == 4 and g.links == ((0, 1),)
    with pytest.raises(IdOutOfRange):
        read_edge_list("n=2\n0 3\n")


@given(digraphs())
def test_edge_list_round_trip(g):
    assert read_edge_list(write_edge_list(g)) == g


def test_ell_validation():
    with pytest.raises(ValueError):
        accessibility_graph(chain_graph(3), 0)
    assert math.isinf(INF)
