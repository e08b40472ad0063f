"""How much does a short control chain cost on random networks?

For each ensemble we solve the unconstrained problem once and then tighten
``ell``. The cost is the extra fraction of nodes that must be driven.
Scale-free networks already need many drivers, and those drivers sit close
to most nodes, so the cap adds little. Denser graphs get by with few
drivers and long chains, and pay more once the chains are cut short.

    python3 demos/cost_of_short_chains.py
"""

import numpy as np

from lccontrol import INF, solve_heuristic
from lccontrol.generators import GenSpec, generate

N, SEEDS = 300, 3
ELLS = (1, 2, 3, 4, 6)

ensembles = [
    ("ER c=2", GenSpec("ER", N, 2.0)),
    ("ER c=4", GenSpec("ER", N, 4.0)),
    ("SF c=2 gamma=2.5", GenSpec("SF", N, 2.0, gamma=2.5)),
    ("SF c=4 gamma=2.5", GenSpec("SF", N, 4.0, gamma=2.5)),
]

print(f"{'ensemble':<18} {'n_i(inf)':>8} " + " ".join(f"C({e})".rjust(7) for e in ELLS))
for name, base in ensembles:
    free, costs = [], {e: [] for e in ELLS}
    for seed in range(SEEDS):
        spec = GenSpec(base.model, base.n, base.c, base.gamma, seed=seed)
        g = generate(spec)
        n_free = solve_heuristic(g, INF, seed).n_inputs
        free.append(n_free / N)
        for ell in ELLS:
            costs[ell].append((solve_heuristic(g, ell, seed).n_inputs - n_free) / N)
    row = " ".join(f"{np.mean(costs[e]):7.3f}" for e in ELLS)
    print(f"{name:<18} {np.mean(free):8.3f} {row}")
