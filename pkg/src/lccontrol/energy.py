"""Control energy of linear network dynamics ``dx/dt = A x + B u``.

Convention: ``A[j, i]`` holds the weight of link ``i -> j`` so that the state
of ``j`` is driven by its predecessors.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import DiGraph, bipartite_repr, read_weighted_edge_list
from .matching import mlr_complete
from .solver import solve_heuristic

__all__ = [
    "NonSquare",
    "SingularGramian",
    "ControlSetup",
    "adjacency_matrix",
    "input_matrix",
    "read_weighted_edge_list",
    "expm",
    "gramian",
    "mean_energy",
    "optimal_signal",
    "simulate",
    "choose_ell",
    "EnergyRow",
    "energy_comparison",
    "energy_csv",
]


class NonSquare(ValueError):
    pass


class SingularGramian(ArithmeticError):
    """The Gramian is not positive definite, so ``(A, B)`` is not controllable at ``t_f``."""


@dataclass
class ControlSetup:
    a: np.ndarray
    b: np.ndarray
    t_f: float = 1.0
    x0: np.ndarray | None = None
    xf: np.ndarray | None = None

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        n = self.a.shape[0]
        if self.a.ndim != 2 or self.a.shape != (n, n):
            raise NonSquare(f"A has shape {self.a.shape}")
        if self.b.ndim != 2 or self.b.shape[0] != n:
            raise ValueError(f"B has shape {self.b.shape}, expected ({n}, m)")
        for col in self.b.T:
            nz = np.flatnonzero(col)
            if len(nz) != 1 or col[nz[0]] != 1.0:
                raise ValueError("each column of B must be a single unit entry")
        if not np.all(np.isfinite(self.a)):
            raise ValueError("A has non-finite entries")
        if self.t_f <= 0:
            raise ValueError("t_f must be positive")
        self.x0 = np.zeros(n) if self.x0 is None else np.asarray(self.x0, dtype=float)
        self.xf = np.zeros(n) if self.xf is None else np.asarray(self.xf, dtype=float)


def adjacency_matrix(g: DiGraph, weights: dict[tuple[int, int], float] | None = None) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, j in g.links:
        a[j, i] = 1.0 if weights is None else weights.get((i, j), 1.0)
    return a


def input_matrix(n: int, inputs) -> np.ndarray:
    inputs = list(inputs)
    b = np.zeros((n, len(inputs)))
    b[inputs, np.arange(len(inputs))] = 1.0
    return b


def expm(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"expm needs a square matrix, got shape {m.shape}")
    return scipy.linalg.expm(m)


def gramian(setup: ControlSetup, steps: int = 200) -> np.ndarray:
    """Finite-horizon controllability Gramian by composite Simpson quadrature."""
    if steps < 1:
        raise ValueError("steps must be positive")
    n_int = 2 * steps  # Simpson needs an even number of intervals
    h = setup.t_f / n_int
    step = expm(setup.a * h)
    phi = np.eye(setup.a.shape[0])
    bbt = setup.b @ setup.b.T
    w = np.zeros_like(phi)
    for k in range(n_int + 1):
        coef = 1 if k in (0, n_int) else (4 if k % 2 else 2)
        w += coef * (phi @ bbt @ phi.T)
        phi = step @ phi
    w *= h / 3
    return (w + w.T) / 2


def _cholesky(w: np.ndarray):
    try:
        return scipy.linalg.cho_factor(w, lower=True)
    except np.linalg.LinAlgError:
        raise SingularGramian("Gramian is not positive definite") from None


def mean_energy(w) -> float:
    """``tr(W^-1)`` from a Cholesky factorization."""
    w = np.asarray(w, dtype=float)
    factor = _cholesky(w)
    inv = scipy.linalg.cho_solve(factor, np.eye(w.shape[0]))
    value = float(np.trace(inv))
    if not math.isfinite(value) or value <= 0:
        raise SingularGramian("Gramian inverse is not finite")
    return value


def optimal_signal(setup: ControlSetup, t: float, w: np.ndarray | None = None) -> np.ndarray:
    """Minimum-energy input ``u(t) = B^T e^{A^T (t_f - t)} W^-1 (x_f - e^{A t_f} x_0)``."""
    if not 0 <= t <= setup.t_f:
        raise ValueError(f"t={t} outside [0, {setup.t_f}]")
    if w is None:
        w = gramian(setup)
    factor = _cholesky(w)
    target = setup.xf - expm(setup.a * setup.t_f) @ setup.x0
    lam = scipy.linalg.cho_solve(factor, target)
    return setup.b.T @ expm(setup.a.T * (setup.t_f - t)) @ lam


def simulate(setup: ControlSetup, steps: int = 1000, w: np.ndarray | None = None):
    """RK4 integration under the optimal signal. Returns (final state, integral of u^T u)."""
    if w is None:
        w = gramian(setup)
    h = setup.t_f / steps
    x = setup.x0.copy()
    energy = 0.0

    def u(t):
        return optimal_signal(setup, min(max(t, 0.0), setup.t_f), w)

    prev = u(0.0)
    for k in range(steps):
        t = k * h
        mid = u(t + h / 2)
        end = u(t + h)
        k1 = setup.a @ x + setup.b @ prev
        k2 = setup.a @ (x + h / 2 * k1) + setup.b @ mid
        k3 = setup.a @ (x + h / 2 * k2) + setup.b @ mid
        k4 = setup.a @ (x + h * k3) + setup.b @ end
        x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        energy += h / 6 * (prev @ prev + 4 * mid @ mid + end @ end)
        prev = end
    return x, energy


def choose_ell(g: DiGraph, m: int, seed: int | None = 0, max_ell: int | None = None):
    """Smallest ``ell`` whose heuristic input count fits in ``m``. Returns (ell, Solution) or None."""
    top = max(g.n - 1, 1) if max_ell is None else max_ell
    for ell in range(1, top + 1):
        sol = solve_heuristic(g, ell, seed)
        if sol.n_inputs <= m:
            return ell, sol
    return None


@dataclass(frozen=True)
class EnergyRow:
    m: int
    strategy: str
    geomean_energy: float
    singular_count: int


def _fill(rng, base, n: int, m: int) -> list[int]:
    rest = np.setdiff1d(np.arange(n), np.asarray(base, dtype=int))
    extra = rng.choice(rest, size=m - len(base), replace=False) if m > len(base) else []
    return sorted(set(base) | {int(v) for v in extra})


def _energy_of(a, inputs, t_f, steps) -> float | None:
    setup = ControlSetup(a, input_matrix(a.shape[0], inputs), t_f=t_f)
    try:
        return mean_energy(gramian(setup, steps))
    except SingularGramian:
        return None


def _geomean(values) -> float:
    if not values:
        return math.nan
    return float(math.exp(np.mean(np.log(values))))


def energy_comparison(
    g: DiGraph,
    m_inputs,
    trials: int = 50,
    seed: int | None = 0,
    weights=None,
    t_f: float = 1.0,
    steps: int = 200,
) -> list[EnergyRow]:
    """LCC-aware placement against a matching-based random baseline.

    For each ``m`` the LCC strategy takes the heuristic inputs at the smallest
    ``ell`` they fit in and fills up with random nodes; the baseline takes the
    unmatched nodes of a randomly completed leaf-removal matching plus random
    nodes. Both are redrawn every trial. Singular Gramians are counted and skipped.
    """
    a = adjacency_matrix(g, weights)
    b = bipartite_repr(g)
    rng = np.random.default_rng(seed)
    rows = []
    for m in m_inputs:
        picked = choose_ell(g, m, seed)
        if picked is None:
            raise ValueError(f"m={m} is below the minimum input count")
        lcc_base = list(picked[1].inputs)
        energies = {"lcc": [], "baseline": []}
        singular = {"lcc": 0, "baseline": 0}
        for _ in range(trials):
            matching = mlr_complete(b, int(rng.integers(2**32)))
            base_set = list(matching.unmatched_minus())
            if len(base_set) > m:
                base_set = sorted(rng.choice(base_set, size=m, replace=False).tolist())
            for name, base in (("lcc", lcc_base), ("baseline", base_set)):
                e = _energy_of(a, _fill(rng, base, g.n, m), t_f, steps)
                if e is None:
                    singular[name] += 1
                else:
                    energies[name].append(e)
        for name in ("lcc", "baseline"):
            rows.append(EnergyRow(m, name, _geomean(energies[name]), singular[name]))
    return rows


def energy_csv(rows, comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "strategy", "geomean_energy", "singular_count"])
    for r in rows:
        writer.writerow([r.m, r.strategy, repr(r.geomean_energy), r.singular_count])
    return buf.getvalue()
