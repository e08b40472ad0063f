import math

import numpy as np
import pytest
from hypothesis import given

from lccontrol.exact import brute_force_min_inputs
from lccontrol.generators import GenSpec, chain_graph, cycle_graph, erdos_renyi
from lccontrol.graph import INF, DiGraph
from lccontrol.solver import bounds, solve_heuristic, verify_input_set

from conftest import digraphs, ells, oracle_valid, unmatched_sets


def test_verify_examples():
    assert verify_input_set(chain_graph(3), 2, {0})
    assert not verify_input_set(chain_graph(3), 1, {0})
    assert not verify_input_set(cycle_graph(3), 1, {0})
    assert verify_input_set(cycle_graph(3), 1, {0, 2})


def test_verify_rejects_empty_and_bad_ids():
    assert not verify_input_set(cycle_graph(3), INF, set())
    assert not verify_input_set(chain_graph(3), 2, {5})


@given(digraphs(max_n=6), ells)
def test_verify_matches_definition(g, ell):
    unmatched = unmatched_sets(g)
    for mask in range(1 << g.n):
        s = [v for v in range(g.n) if mask >> v & 1]
        assert verify_input_set(g, ell, s) == oracle_valid(g, s, ell, unmatched)


def test_heuristic_chain_of_nine():
    sol = solve_heuristic(chain_graph(9), 2)
    assert sol.inputs == (0, 3, 6)
    assert sol.valid and sol.method == "heuristic"


def test_heuristic_empty_graph():
    for ell in (1, 3, INF):
        assert solve_heuristic(DiGraph(4), ell).inputs == (0, 1, 2, 3)


@given(digraphs(max_n=10), ells)
def test_heuristic_output_is_valid(g, ell):
    sol = solve_heuristic(g, ell)
    assert verify_input_set(g, ell, sol.inputs)
    assert set(sol.matching.unmatched_minus()) == set(sol.inputs)


@given(digraphs(max_n=9), ells)
def test_bounds_sandwich(g, ell):
    b = bounds(g, ell)
    opt = brute_force_min_inputs(g, ell).n_inputs
    sol = solve_heuristic(g, ell)
    assert b.lower <= opt <= sol.n_inputs <= b.upper


@given(digraphs(max_n=9), ells)
def test_core_free_is_optimal(g, ell):
    sol = solve_heuristic(g, ell, refine=False)
    if sol.core_free:
        assert sol.n_inputs == brute_force_min_inputs(g, ell).n_inputs


def test_determinism():
    g = erdos_renyi(GenSpec("ER", 200, 3.0, seed=4))
    assert solve_heuristic(g, 2, seed=1) == solve_heuristic(g, 2, seed=1)


def test_monotone_in_ell():
    rng = np.random.default_rng(0)
    for k in range(30):
        g = erdos_renyi(GenSpec("ER", int(rng.integers(5, 40)), float(rng.uniform(0.5, 3)), seed=k))
        counts = [solve_heuristic(g, ell).n_inputs for ell in (1, 2, 3, 4, 6, INF)]
        assert counts == sorted(counts, reverse=True)


def test_bounds_examples():
    b = bounds(chain_graph(9), 2)
    assert (b.n_m, b.n_s, b.n_ds, b.lower, b.upper) == (1, 1, 3, 1, 3)
    b = bounds(cycle_graph(3), 1)
    assert b.n_m == 0 and b.n_s == 0 and b.lower == 0 and b.upper == b.n_ds
    b = bounds(DiGraph(5), 1)
    assert (b.n_m, b.n_ds, b.n_s, b.lower, b.upper) == (5, 5, 5, 5, 5)


def test_bounds_exact_ds():
    b = bounds(cycle_graph(5), 1, exact_ds=True)
    assert b.n_ds == 3


def test_rejects_bad_ell():
    with pytest.raises(ValueError):
        solve_heuristic(chain_graph(3), 0)
    assert solve_heuristic(chain_graph(3), math.inf).inputs == (0,)
