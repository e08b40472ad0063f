from hypothesis import given

from lccontrol.dominating import NodeLabel, dslr, dslr_complete
from lccontrol.generators import chain_graph, cycle_graph, star_graph
from lccontrol.graph import DiGraph, dominates

from conftest import digraphs, oracle_min_dominating


def test_dslr_star():
    res = dslr(star_graph(4))
    assert res.dominating == (0,) and not res.ds_core_links


def test_dslr_chain_of_three():
    res = dslr(chain_graph(3))
    assert res.dominating == (0, 1) and not res.ds_core_links
    assert oracle_min_dominating(chain_graph(3)) == 2


def test_dslr_cycle_core():
    res = dslr(cycle_graph(3))
    assert res.dominating == ()
    assert len(res.ds_core_links) == 3
    assert all(lab == NodeLabel.UNOBSERVED for lab in res.labels)


def test_dslr_complete_examples():
    assert len(dslr_complete(cycle_graph(3))) == oracle_min_dominating(cycle_graph(3)) == 2
    assert dslr_complete(DiGraph(3)) == (0, 1, 2)
    assert len(dslr_complete(chain_graph(6))) == 3


@given(digraphs(max_n=10))
def test_dslr_complete_dominates(g):
    assert dominates(g, dslr_complete(g))


@given(digraphs(max_n=9))
def test_empty_core_is_optimal(g):
    res = dslr(g)
    if not res.ds_core_links:
        assert len(res.dominating) == oracle_min_dominating(g)


@given(digraphs(max_n=9))
def test_observed_labels(g):
    res = dslr(g)
    chosen = set(res.dominating)
    for v in range(g.n):
        if any(u in chosen for u in g.predecessors(v)) and v not in chosen:
            assert res.labels[v] == NodeLabel.OBSERVED
    if not res.ds_core_links:
        assert all(lab != NodeLabel.UNOBSERVED for lab in res.labels)


@given(digraphs(max_n=8))
def test_rule_order_does_not_change_size(g):
    # relabelling nodes changes the lowest-id tie breaks but not the optimum on core-free graphs
    res = dslr(g)
    perm = list(range(g.n))[::-1]
    h = DiGraph(g.n, [(perm[a], perm[b]) for a, b in g.links])
    res2 = dslr(h)
    if not res.ds_core_links and not res2.ds_core_links:
        assert len(res.dominating) == len(res2.dominating)


def test_self_loops_ignored():
    g = DiGraph(2, [(0, 0), (0, 1)], allow_self_loops=True)
    assert dslr(g).dominating == (0,)
