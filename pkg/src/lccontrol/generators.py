"""Random and deterministic digraph generators, and degree-preserving rewiring."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import DiGraph

__all__ = [
    "InvalidSpec",
    "GenSpec",
    "chain_graph",
    "cycle_graph",
    "star_graph",
    "erdos_renyi",
    "scale_free",
    "generate",
    "rewiring_trials",
    "degree_preserving_randomize",
]


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """Random-graph recipe: ``model`` is ``"ER"`` or ``"SF"``; ``c`` is the mean degree L/N."""

    model: str
    n: int
    c: float
    gamma: float | None = None
    seed: int | None = None
    correlated: bool = False

    def validate(self):
        if self.model not in ("ER", "SF"):
            raise InvalidSpec(f"unknown model {self.model!r}")
        if self.n < 1:
            raise InvalidSpec("n must be at least 1")
        if self.c < 0:
            raise InvalidSpec("mean degree must be nonnegative")
        if self.model == "SF" and (self.gamma is None or self.gamma <= 2):
            raise InvalidSpec("scale-free model needs gamma > 2")


def chain_graph(n: int) -> DiGraph:
    return DiGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> DiGraph:
    if n == 1:
        return DiGraph(1, [(0, 0)], allow_self_loops=True)
    return DiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> DiGraph:
    """Hub 0 pointing at ``n - 1`` leaves."""
    return DiGraph(n, [(0, j) for j in range(1, n)])


def _pairs_to_links(index: np.ndarray, n: int) -> list[tuple[int, int]]:
    # index k over ordered pairs without the diagonal
    tail = index // (n - 1)
    head = index % (n - 1)
    head = head + (head >= tail)
    return list(zip(tail.tolist(), head.tolist()))


def erdos_renyi(spec: GenSpec) -> DiGraph:
    """Each ordered pair ``i != j`` is a link independently with probability ``c/(n-1)``."""
    spec.validate()
    n = spec.n
    if n == 1 or spec.c == 0:
        return DiGraph(n)
    p = spec.c / (n - 1)
    if p > 1:
        raise InvalidSpec(f"mean degree {spec.c} exceeds n-1={n - 1}")
    rng = np.random.default_rng(spec.seed)
    total = n * (n - 1)
    count = int(rng.binomial(total, p))
    index = rng.choice(total, size=count, replace=False)
    return DiGraph(n, _pairs_to_links(np.sort(index), n))


def _sf_weights(n: int, gamma: float) -> np.ndarray:
    w = np.arange(1, n + 1, dtype=float) ** (-1.0 / (gamma - 1.0))
    return w / w.sum()


def _expected_links(scale: float, w_out: np.ndarray, w_in: np.ndarray) -> float:
    # sum over i != j of min(1, scale * w_out[i] * w_in[j])
    order = np.sort(w_in)
    prefix = np.concatenate([[0.0], np.cumsum(order)])
    cut = np.searchsorted(order, 1.0 / (scale * w_out), side="left")
    total = float(np.sum(scale * w_out * prefix[cut] + (len(order) - cut)))
    diag = np.minimum(1.0, scale * w_out * w_in).sum()
    return total - diag


def _calibrate(target: float, w_out, w_in) -> float:
    lo, hi = 0.0, target
    while _expected_links(hi, w_out, w_in) < target:
        lo, hi = hi, hi * 2
        if hi > 1e12:
            raise InvalidSpec("mean degree too large for this n")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _expected_links(mid, w_out, w_in) < target:
            lo = mid
        else:
            hi = mid
    return hi


def scale_free(spec: GenSpec, block: int = 512) -> DiGraph:
    """Static hidden-parameter model.

    Node ``i`` carries weight ``(i+1)**(-1/(gamma-1))`` for out-links; in-link
    weights use the same sequence under an independent random permutation
    (identity when ``spec.correlated``). Link ``i -> j`` appears with
    probability ``min(1, K w_out[i] w_in[j])``, ``K`` chosen so the expected
    link count is ``c n``.
    """
    spec.validate()
    n = spec.n
    rng = np.random.default_rng(spec.seed)
    w = _sf_weights(n, spec.gamma)
    w_out = w
    w_in = w if spec.correlated else w[rng.permutation(n)]
    if n == 1 or spec.c == 0:
        return DiGraph(n)
    if spec.c > n - 1:
        raise InvalidSpec(f"mean degree {spec.c} exceeds n-1={n - 1}")
    scale = _calibrate(spec.c * n, w_out, w_in)
    links = []
    for start in range(0, n, block):
        rows = np.arange(start, min(n, start + block))
        prob = np.minimum(1.0, scale * np.outer(w_out[rows], w_in))
        prob[np.arange(len(rows)), rows] = 0.0
        hit = rng.random(prob.shape) < prob
        r, cidx = np.nonzero(hit)
        links.extend(zip((rows[r]).tolist(), cidx.tolist()))
    return DiGraph(n, links)


def generate(spec: GenSpec) -> DiGraph:
    return erdos_renyi(spec) if spec.model == "ER" else scale_free(spec)


def rewiring_trials(n_links: int, epsilon: float) -> int:
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return math.floor(n_links / 2 * math.log(1 / epsilon))


def degree_preserving_randomize(g: DiGraph, epsilon: float = 1e-6, seed=None) -> DiGraph:
    """Double-edge swaps ``(a->b, c->d) -> (a->d, c->b)``, skipping any that would
    create a self-loop or duplicate link. In- and out-degrees are preserved.
    """
    trials = rewiring_trials(g.n_links, epsilon)
    links = list(g.links)
    if len(links) < 2:
        return g
    present = set(links)
    rng = np.random.default_rng(seed)
    m = len(links)
    picks = rng.integers(0, m, size=(trials, 2))
    for i, j in picks.tolist():
        if i == j:
            continue
        a, b = links[i]
        c, d = links[j]
        if a == d or c == b or (a, d) in present or (c, b) in present:
            continue
        present.difference_update(((a, b), (c, d)))
        present.update(((a, d), (c, b)))
        links[i] = (a, d)
        links[j] = (c, b)
    return DiGraph(g.n, links, allow_self_loops=g.allow_self_loops)
