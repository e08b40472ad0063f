"""Shared fixtures, hypothesis strategies and definition-level oracles.

The oracles here deliberately avoid the package's own algorithms: matchings
are enumerated link by link and control chains are measured by plain BFS.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np
from hypothesis import settings, strategies as st

from lccontrol.graph import DiGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_digraph(rng: np.random.Generator, n: int, p: float) -> DiGraph:
    links = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < p]
    return DiGraph(n, links)


@st.composite
def digraphs(draw, min_n=1, max_n=8, self_loops=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if self_loops or i != j]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return DiGraph(n, chosen, allow_self_loops=self_loops)


ells = st.sampled_from([1, 2, 3, math.inf])


def unmatched_sets(g: DiGraph) -> set[frozenset[int]]:
    """Every set of heads left uncovered by some directed matching of ``g``."""
    links = list(g.links)
    found = set()

    def rec(k, tails, heads):
        if k == len(links):
            found.add(frozenset(set(range(g.n)) - heads))
            return
        rec(k + 1, tails, heads)
        t, h = links[k]
        if t not in tails and h not in heads:
            rec(k + 1, tails | {t}, heads | {h})

    rec(0, frozenset(), frozenset())
    return found


def distances_from(g: DiGraph, sources) -> list[float]:
    dist = [math.inf] * g.n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.successors(u):
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def chain_ok(g: DiGraph, s, ell) -> bool:
    if not s:
        return g.n == 0
    far = max(distances_from(g, s))
    return far < math.inf and far <= ell


def oracle_valid(g: DiGraph, s, ell, unmatched=None) -> bool:
    unmatched = unmatched_sets(g) if unmatched is None else unmatched
    return frozenset(s) in unmatched and chain_ok(g, s, ell)


def oracle_min_inputs(g: DiGraph, ell) -> int:
    unmatched = unmatched_sets(g)
    return min(len(s) for s in unmatched if chain_ok(g, s, ell))


def oracle_min_dominating(g: DiGraph) -> int:
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            chosen = set(s)
            if all(v in chosen or any(u in chosen for u in g.predecessors(v)) for v in range(g.n)):
                return k
    return g.n
