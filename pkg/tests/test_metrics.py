import csv
import io

import pytest
from hypothesis import given

from lccontrol.generators import (
    GenSpec,
    chain_graph,
    cycle_graph,
    degree_preserving_randomize,
    erdos_renyi,
    star_graph,
)
from lccontrol.graph import INF, DiGraph
from lccontrol.metrics import (
    CSV_HEADER,
    EmptyGraph,
    ExperimentRecord,
    core_fraction,
    cost,
    delta,
    heterogeneity,
    records_to_csv,
)

from conftest import digraphs, ells


def test_cost_chain():
    assert cost(chain_graph(9), 2) == pytest.approx(2 / 9)
    assert cost(chain_graph(9), 8) == 0
    assert cost(DiGraph(4), 1) == 0


@given(digraphs(max_n=12), ells)
def test_cost_nonnegative(g, ell):
    assert 0 <= cost(g, ell) <= 1


def test_core_fraction_chain_at_ell_one():
    assert core_fraction(chain_graph(9), 1) == (0, 0, 0)


def test_core_fraction_chain_longer_ell():
    # the DS rules cannot start on G_l of a path for l >= 2, but the matching side is clean
    m, ds, mean = core_fraction(chain_graph(9), 2)
    assert m == 0 and 0 < ds <= 1 and mean == ds / 2


def test_core_fraction_cycle():
    m, ds, mean = core_fraction(cycle_graph(3), 1)
    assert (m, ds, mean) == (0, 1, 0.5)


def test_heterogeneity_examples():
    assert heterogeneity(cycle_graph(6)) == 0
    assert heterogeneity(star_graph(4)) == pytest.approx(1.5)
    with pytest.raises(EmptyGraph):
        heterogeneity(DiGraph(3))


def test_heterogeneity_invariant_under_rewiring():
    g = erdos_renyi(GenSpec("ER", 200, 3, seed=2))
    h = degree_preserving_randomize(g, 1e-6, 5)
    assert heterogeneity(h) == pytest.approx(heterogeneity(g))


def test_delta_examples():
    for n in (5, 9, 14):
        for ell in (1, 2, 3):
            assert delta(chain_graph(n), ell) == 0


@given(digraphs(max_n=9), ells)
def test_core_free_means_zero_delta(g, ell):
    _, _, frac = core_fraction(g, ell)
    d = delta(g, ell)
    assert 0 <= d <= 1
    if frac == 0:
        assert d == 0


def test_csv_header_and_rows():
    rec = ExperimentRecord("ER", 9, 1.0, None, INF, 3, 0.25, cost=0.0, H=0.5)
    text = records_to_csv([rec], ["seed=3"])
    lines = text.splitlines()
    assert lines[0] == "# seed=3"
    assert lines[1] == ",".join(CSV_HEADER)
    row = next(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert row["ell"] == "inf" and row["gamma"] == "" and float(row["n_i_frac"]) == 0.25
