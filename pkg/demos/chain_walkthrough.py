"""Walk through a single small network by hand.

A directed path needs one input to be structurally controllable, but the
signal then has to travel the whole length. Capping the control chain at
``ell`` forces extra inputs, roughly one per ``ell + 1`` nodes.

    python3 demos/chain_walkthrough.py
"""

import math

from lccontrol import (
    INF,
    bounds,
    branch_and_bound,
    chain_graph,
    cycle_graph,
    solve_heuristic,
    verify_input_set,
)

g = chain_graph(12)
print(f"path with {g.n} nodes")
print(f"{'ell':>4} {'greedy':>7} {'exact':>6} {'lower':>6} {'upper':>6}  inputs")
for ell in (1, 2, 3, 5, 11, INF):
    sol = solve_heuristic(g, ell)
    res = branch_and_bound(g, ell)
    b = bounds(g, ell)
    print(f"{ell!s:>4} {sol.n_inputs:>7} {res.solution.n_inputs:>6} {b.lower:>6} {b.upper:>6}  {list(sol.inputs)}")
    if ell != INF:
        assert sol.n_inputs == math.ceil(g.n / (ell + 1))

# a cycle has a perfect matching, so a single input would do without a cap;
# the check below shows why one input is still not enough at ell=1
c = cycle_graph(5)
print()
print("5-cycle, ell=1")
print("  {0} valid?", verify_input_set(c, 1, {0}))
sol = solve_heuristic(c, 1)
print("  greedy picks", list(sol.inputs), "valid?", sol.valid)
