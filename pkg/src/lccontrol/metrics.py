"""Experiment-level quantities: input fraction, cost, core fractions, heterogeneity, delta."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass

import numpy as np

from .exact import branch_and_bound
from .graph import INF, DiGraph, accessibility_graph
from .solver import solve_heuristic

__all__ = [
    "EmptyGraph",
    "CSV_HEADER",
    "ExperimentRecord",
    "cost",
    "core_fraction",
    "heterogeneity",
    "delta",
    "records_to_csv",
]

CSV_HEADER = (
    "model", "n", "c", "gamma", "ell", "seed",
    "n_i_frac", "cost", "m_core_frac", "ds_core_frac", "core_frac", "H", "delta",
)


class EmptyGraph(ValueError):
    pass


@dataclass
class ExperimentRecord:
    model: str
    n: int
    c: float
    gamma: float | None
    ell: float
    seed: int | None
    n_i_frac: float
    cost: float | None = None
    m_core_frac: float | None = None
    ds_core_frac: float | None = None
    core_frac: float | None = None
    H: float | None = None
    delta: float | None = None

    def row(self) -> list[str]:
        out = []
        for key in CSV_HEADER:
            value = asdict(self)[key]
            if value is None:
                out.append("")
            elif isinstance(value, float):
                out.append("inf" if math.isinf(value) else repr(round(value, 12)))
            else:
                out.append(str(value))
        return out


def records_to_csv(records, comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def cost(g: DiGraph, ell, seed: int | None = 0) -> float:
    """Per-node price of bounding the control chain: ``(N_i(ell) - N_i(INF)) / N``."""
    if g.n == 0:
        return 0.0
    restricted = solve_heuristic(g, ell, seed).n_inputs
    free = solve_heuristic(g, INF, seed).n_inputs
    return (restricted - free) / g.n


def core_fraction(g: DiGraph, ell, seed: int | None = 0, refine: bool = True) -> tuple[float, float, float]:
    """First-stall residual link fractions ``(m_core, ds_core, mean)``.

    The M-core is normalized by the link count of ``g``, the DS-core by that of ``G_l``.
    Cores are recorded before refinement, so ``refine=False`` gives the same
    numbers faster.
    """
    sol = solve_heuristic(g, ell, seed, refine=refine)
    n_gl = accessibility_graph(g, ell).n_links
    m_frac = sol.m_core_size / g.n_links if g.n_links else 0.0
    ds_frac = sol.ds_core_size / n_gl if n_gl else 0.0
    return m_frac, ds_frac, (m_frac + ds_frac) / 2


def _spread(k: np.ndarray) -> float:
    # sum over all ordered pairs of |k_i - k_j|, via sorted prefix sums
    k = np.sort(k.astype(float))
    n = len(k)
    idx = np.arange(n)
    return 2.0 * float(np.sum(k * (2 * idx - n + 1)))


def heterogeneity(g: DiGraph) -> float:
    """``max(H_in, H_out)`` with ``H = sum_ij |k_i - k_j| / (c N^2)`` and ``c = L/N``."""
    if g.n_links == 0:
        raise EmptyGraph("heterogeneity needs at least one link")
    c = g.n_links / g.n
    scale = c * g.n * g.n
    h_in = _spread(np.asarray(g.in_degrees())) / scale
    h_out = _spread(np.asarray(g.out_degrees())) / scale
    return max(h_in, h_out)


def delta(g: DiGraph, ell, seed: int | None = 0, node_limit: int = 1_000_000) -> float:
    """Heuristic minus exact input fraction. Raises if the exact search is cut short."""
    heur = solve_heuristic(g, ell, seed).n_inputs
    res = branch_and_bound(g, ell, node_limit=node_limit, seed=seed or 0)
    if not res.optimal:
        raise RuntimeError(f"branch and bound hit node_limit={node_limit}")
    return (heur - res.solution.n_inputs) / g.n
