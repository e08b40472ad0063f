"""Minimum input sets for structural controllability with a bounded longest control chain."""

from .dominating import NodeLabel, dslr, dslr_complete
from .exact import (
    TooLarge,
    branch_and_bound,
    brute_force_min_inputs,
    build_ilp_cycling,
    build_ilp_naive,
    mds_via_reduction,
    min_dominating_set_bruteforce,
    solve_ilp_exhaustive,
    write_lp,
)
from .generators import (
    GenSpec,
    chain_graph,
    cycle_graph,
    degree_preserving_randomize,
    erdos_renyi,
    scale_free,
    star_graph,
)
from .graph import (
    INF,
    BipartiteGraph,
    DiGraph,
    accessibility_graph,
    bipartite_repr,
    lcc_length,
    read_edge_list,
    write_edge_list,
)
from .matching import Matching, hopcroft_karp, mlr, mlr_complete
from .metrics import core_fraction, cost, delta, heterogeneity
from .solver import Bounds, Solution, bounds, solve_heuristic, verify_input_set

__version__ = "0.1.0"

__all__ = [
    "INF", "DiGraph", "BipartiteGraph", "accessibility_graph", "bipartite_repr", "lcc_length",
    "read_edge_list", "write_edge_list",
    "Matching", "hopcroft_karp", "mlr", "mlr_complete",
    "NodeLabel", "dslr", "dslr_complete",
    "Solution", "Bounds", "solve_heuristic", "verify_input_set", "bounds",
    "TooLarge", "brute_force_min_inputs", "min_dominating_set_bruteforce", "branch_and_bound",
    "build_ilp_naive", "build_ilp_cycling", "solve_ilp_exhaustive", "write_lp", "mds_via_reduction",
    "GenSpec", "erdos_renyi", "scale_free", "chain_graph", "cycle_graph", "star_graph",
    "degree_preserving_randomize",
    "cost", "core_fraction", "heterogeneity", "delta",
]
