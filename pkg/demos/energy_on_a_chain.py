"""Control energy with and without a chain-length cap.

Fifteen nodes in a line, unit weights. With a fixed budget of ``m`` inputs
we compare two placements: the LCC-aware one (inputs spread so that no node
is far from a driver) and a baseline that keeps the matching-based driver
nodes and fills the rest at random. Energies are the trace of the inverse
Gramian, averaged geometrically over random fills.

    python3 demos/energy_on_a_chain.py
"""

from lccontrol import chain_graph
from lccontrol.energy import energy_comparison

rows = energy_comparison(chain_graph(15), list(range(2, 9)), trials=50, seed=0)
table = {}
for r in rows:
    table.setdefault(r.m, {})[r.strategy] = r.geomean_energy

print(f"{'m':>3} {'lcc-aware':>12} {'baseline':>12} {'ratio':>10}")
for m, e in table.items():
    print(f"{m:>3} {e['lcc']:12.4e} {e['baseline']:12.4e} {e['lcc'] / e['baseline']:10.2e}")
