"""Maximum matching (Hopcroft-Karp) and matching leaf-removal on the split graph."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .graph import BipartiteGraph

__all__ = [
    "Matching",
    "MlrResult",
    "hopcroft_karp",
    "max_matching_leaving_unmatched",
    "mlr",
    "mlr_complete",
]


@dataclass(frozen=True)
class Matching:
    """Set of split-graph edges ``(plus, minus)`` sharing no endpoint."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        plus = [p for p, _ in self.edges]
        minus = [m for _, m in self.edges]
        if len(set(plus)) != len(plus) or len(set(minus)) != len(minus):
            raise ValueError("matching edges share an endpoint")
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: (e[1], e[0]))))

    def __len__(self):
        return len(self.edges)

    @property
    def matched_plus(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[[p for p, _ in self.edges]] = True
        return mask

    @property
    def matched_minus(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[[m for _, m in self.edges]] = True
        return mask

    def unmatched_minus(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(~self.matched_minus).tolist())


def _hopcroft_karp(left: list[int], adj, n_right: int) -> tuple[dict[int, int], list[int]]:
    """Maximum matching from the ``left`` vertices into ``0..n_right-1``.

    Returns (left -> right map, right -> left array with -1 for free).
    """
    match_l = {u: -1 for u in left}
    match_r = [-1] * n_right
    inf = len(left) + 1
    dist = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= found:
                continue
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = min(found, dist[u] + 1)
                elif w in match_l and dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found < inf

    def dfs(root: int) -> bool:
        # iterative DFS along layered alternating paths
        stack = [(root, iter(adj[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w < 0:
                    path.append((u, v))
                    for uu, vv in path:
                        match_l[uu] = vv
                        match_r[vv] = uu
                    return True
                if w in match_l and dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = inf
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in left:
            if match_l[u] < 0:
                dfs(u)
    return match_l, match_r


def hopcroft_karp(b: BipartiteGraph) -> Matching:
    match_l, _ = _hopcroft_karp(list(range(b.n)), b.plus_adj, b.n)
    return Matching(b.n, tuple((p, m) for p, m in match_l.items() if m >= 0))


def max_matching_leaving_unmatched(b: BipartiteGraph, s: Iterable[int]) -> bool:
    """True iff some matching leaves exactly the minus copies of ``s`` unmatched."""
    excluded = set(s)
    left = [m for m in range(b.n) if m not in excluded]
    match_l, _ = _hopcroft_karp(left, b.minus_adj, b.n)
    return all(v >= 0 for v in match_l.values())


@dataclass(frozen=True)
class MlrResult:
    matching: Matching
    m_core_edges: tuple[tuple[int, int], ...]
    forced_unmatched: frozenset[int]


class _Residual:
    """Mutable split graph for leaf removal. Side 0 is plus, side 1 is minus."""

    def __init__(self, b: BipartiteGraph):
        self.n = b.n
        self.adj = ([set(a) for a in b.plus_adj], [set(a) for a in b.minus_adj])
        self.alive = ([True] * b.n, [True] * b.n)
        self.n_edges = len(b.edges)
        self.matched: list[tuple[int, int]] = []
        self.forced: set[int] = set()
        self.queue = deque()

    def seed_leaves(self):
        for side in (0, 1):
            for v in range(self.n):
                if len(self.adj[side][v]) == 1:
                    self.queue.append((side, v))

    def remove(self, side: int, v: int):
        other = 1 - side
        for w in self.adj[side][v]:
            nbrs = self.adj[other][w]
            nbrs.discard(v)
            self.n_edges -= 1
            if len(nbrs) == 1:
                self.queue.append((other, w))
            elif not nbrs and other == 1:
                self.forced.add(w)
        self.adj[side][v] = set()
        self.alive[side][v] = False

    def match(self, p: int, m: int):
        self.matched.append((p, m))
        # minus side first so m is not reported as isolated
        self.remove(1, m)
        self.remove(0, p)

    def run(self):
        while self.queue:
            side, v = self.queue.popleft()
            if not self.alive[side][v] or len(self.adj[side][v]) != 1:
                continue
            (w,) = self.adj[side][v]
            if side == 0:
                self.match(v, w)
            else:
                self.match(w, v)

    def core_edges(self) -> list[tuple[int, int]]:
        return sorted((p, m) for p in range(self.n) for m in self.adj[0][p])


def mlr(b: BipartiteGraph) -> MlrResult:
    """Match leaves to their unique neighbor until none remain.

    Leaves are processed FIFO, seeded in ascending id with plus leaves
    first. ``forced_unmatched`` holds minus vertices that lost their last
    edge during removal (initially isolated ones are not included).
    """
    res = _Residual(b)
    res.seed_leaves()
    res.run()
    return MlrResult(
        matching=Matching(b.n, tuple(res.matched)),
        m_core_edges=tuple(res.core_edges()),
        forced_unmatched=frozenset(res.forced),
    )


def mlr_complete(b: BipartiteGraph, rng_seed=None) -> Matching:
    """Leaf removal, breaking each stall by matching a uniformly random core edge."""
    rng = np.random.default_rng(rng_seed)
    res = _Residual(b)
    res.seed_leaves()
    res.run()
    while res.n_edges:
        core = res.core_edges()
        p, m = core[rng.integers(len(core))]
        res.match(p, m)
        res.run()
    return Matching(b.n, tuple(res.matched))
