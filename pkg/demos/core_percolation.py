"""Watch the leaf-removal cores appear as Erdos-Renyi graphs get denser.

When both cores are empty the greedy answer is provably optimal. Past a
critical mean degree a finite fraction of links survives leaf removal, and
the greedy stage has to guess. The sweep uses modest sizes so it runs in
well under a minute; the transition sharpens as ``N`` grows.

    python3 demos/core_percolation.py [N]
"""

import sys

import numpy as np

from lccontrol import GenSpec, core_fraction, erdos_renyi

N = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
SEEDS = 3

for ell in (1, 3):
    print(f"ell={ell}, N={N}")
    print(f"{'c':>5} {'m_core':>8} {'ds_core':>8} {'mean':>8}")
    for c in np.arange(1.0, 4.01, 0.4):
        rows = [core_fraction(erdos_renyi(GenSpec("ER", N, float(c), seed=s)), ell, s, refine=False) for s in range(SEEDS)]
        m, ds, mean = np.mean(rows, axis=0)
        print(f"{c:5.1f} {m:8.4f} {ds:8.4f} {mean:8.4f}")
    print()
