"""Greedy LCC-constrained minimum input selection, bounds and validity check.

The heuristic runs matching leaf-removal on the split graph ``B`` and
dominating-set leaf-removal on the accessibility graph ``G_l`` in lockstep.
A minus copy that loses its last edge in ``B`` is an input, so it becomes
dominating in ``G_l``; a dominating node in ``G_l`` is an input, so its
minus copy leaves ``B``.
"""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from .dominating import DsState, NodeLabel, Worklist, dslr_complete
from .graph import (
    DiGraph,
    accessibility_graph,
    bipartite_repr,
    check_ell,
    dominates,
    sources,
)
from .matching import Matching, _hopcroft_karp, hopcroft_karp, max_matching_leaving_unmatched

__all__ = ["Solution", "Bounds", "verify_input_set", "solve_heuristic", "bounds"]

ACTIVE, MATCHED, INPUT = 0, 1, 2


@dataclass(frozen=True)
class Solution:
    """Input-node set plus provenance.

    ``m_core_size`` and ``ds_core_size`` count residual links of ``B`` and
    ``G_l`` when the rules first stalled (both zero if they never did).
    """

    inputs: tuple[int, ...]
    valid: bool
    method: str
    ell: float = 1
    seed: int | None = None
    m_core_size: int = 0
    ds_core_size: int = 0
    matching: Matching | None = field(default=None, compare=False, repr=False)

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def core_free(self) -> bool:
        return self.m_core_size == 0 and self.ds_core_size == 0


@dataclass(frozen=True)
class Bounds:
    n_m: int
    n_ds: int
    n_s: int
    lower: int
    upper: int


def verify_input_set(g: DiGraph, ell, s: Iterable[int]) -> bool:
    """Matching condition on the pruned split graph plus domination in ``G_l``."""
    check_ell(ell)
    s = set(s)
    if any(not 0 <= v < g.n for v in s):
        return False
    if not max_matching_leaving_unmatched(bipartite_repr(g), s):
        return False
    return dominates(accessibility_graph(g, ell), s)


class _Coupled:
    def __init__(self, g: DiGraph, ell):
        n = g.n
        self.g = g
        self.gl = accessibility_graph(g, ell)
        # split graph B: plus_adj[p] are minus neighbors, minus_adj[m] plus neighbors
        self.plus_adj = [set(g.successors(v)) for v in range(n)]
        self.minus_adj = [set(g.predecessors(v)) for v in range(n)]
        self.plus_alive = [True] * n
        self.state = [ACTIVE] * n
        self.partner = [-1] * n  # minus -> plus
        self.b_edges = g.n_links

        self.wl_plus = Worklist(range(n))
        self.wl_ds1 = Worklist(range(n))
        self.wl_minus = Worklist(range(n))
        self.wl_ds2 = Worklist(range(n))
        self.wl_ds3 = Worklist(range(n))
        self.ds = DsState(self.gl, touch=self._touch_gl)
        self.gain_heap = [(-self.ds.gain(v), v) for v in range(n)]
        heapq.heapify(self.gain_heap)
        self.match_heap = [(self._gl_degree(v), v) for v in range(n)]
        heapq.heapify(self.match_heap)

        self.first_stall = None
        for v in range(n):
            if not self.minus_adj[v]:
                self.make_input(v)

    # bookkeeping
    def _gl_degree(self, v: int) -> int:
        return len(self.ds.succ[v]) + len(self.ds.pred[v])

    def _touch_gl(self, v: int):
        self.wl_ds1.push(v)
        self.wl_ds2.push(v)
        self.wl_ds3.push(v)
        self.wl_minus.push(v)
        heapq.heappush(self.gain_heap, (-self.ds.gain(v), v))
        heapq.heappush(self.match_heap, (self._gl_degree(v), v))

    def _touch_minus(self, m: int):
        self.wl_minus.push(m)
        self.wl_ds2.push(m)
        self.wl_ds3.push(m)

    # B updates
    def _remove_minus(self, m: int):
        for p in self.minus_adj[m]:
            self.plus_adj[p].discard(m)
            self.b_edges -= 1
            self.wl_plus.push(p)
        self.minus_adj[m] = set()

    def _remove_plus(self, p: int):
        isolated = []
        for m in self.plus_adj[p]:
            nbrs = self.minus_adj[m]
            nbrs.discard(p)
            self.b_edges -= 1
            self._touch_minus(m)
            if not nbrs and self.state[m] == ACTIVE:
                isolated.append(m)
        self.plus_adj[p] = set()
        self.plus_alive[p] = False
        for m in sorted(isolated):
            self.make_input(m)

    def match(self, p: int, m: int):
        self.state[m] = MATCHED
        self.partner[m] = p
        self._remove_minus(m)
        self._remove_plus(p)
        self._touch_minus(m)

    def make_input(self, v: int):
        """Unmatched minus copy -> input node -> dominating in ``G_l``."""
        if self.state[v] == INPUT:
            return
        if self.state[v] == MATCHED:
            self._unmatch(v)
        self.state[v] = INPUT
        self._remove_minus(v)
        self._touch_minus(v)
        if self.ds.label[v] != NodeLabel.DOMINATING:
            self.ds.dominate(v)

    def _unmatch(self, m: int):
        # a matched node was forced to dominate: give its partner back to B
        p = self.partner[m]
        self.partner[m] = -1
        self.plus_alive[p] = True
        for w in self.g.successors(p):
            if self.state[w] == ACTIVE:
                self.plus_adj[p].add(w)
                self.minus_adj[w].add(p)
                self.b_edges += 1
                self._touch_minus(w)
        self.wl_plus.push(p)

    # rule predicates
    def _plus_leaf(self, p: int) -> bool:
        return self.plus_alive[p] and len(self.plus_adj[p]) == 1

    def _minus_leaf(self, m: int) -> bool:
        return (
            self.state[m] == ACTIVE
            and len(self.minus_adj[m]) == 1
            and self.ds.label[m] == NodeLabel.OBSERVED
            and not self.ds.succ[m]
        )

    def _ds2(self, v: int) -> bool:
        return self.state[v] == MATCHED and self.ds.ds2(v)

    def _ds3(self, v: int) -> bool:
        return self.state[v] == MATCHED and self.ds.ds3(v)

    def step(self) -> bool:
        ds = self.ds
        p = self.wl_plus.pop_valid(self._plus_leaf)
        if p is not None:
            (m,) = self.plus_adj[p]
            self.match(p, m)
            return True
        v = self.wl_ds1.pop_valid(ds.ds1)
        if v is not None:
            self.make_input(v)
            return True
        m = self.wl_minus.pop_valid(self._minus_leaf)
        if m is not None:
            (p,) = self.minus_adj[m]
            self.match(p, m)
            return True
        v = self.wl_ds2.pop_valid(self._ds2)
        if v is not None:
            (w,) = ds.pred[v]
            self.make_input(w)
            return True
        v = self.wl_ds3.pop_valid(self._ds3)
        if v is not None:
            (w,) = ds.succ[v]
            ds.remove_link(v, w)
            return True
        return False

    def fallback(self):
        if self.first_stall is None:
            self.first_stall = (self.b_edges, self.ds.n_links)
        if self.b_edges and not self.ds.n_links:
            # G_l is settled, every candidate ties at degree 0: finish B with a maximum matching
            self._finish_matching()
        elif self.b_edges:
            # match the minus copy least likely to be needed as a dominator
            while True:
                deg, m = heapq.heappop(self.match_heap)
                if deg == self._gl_degree(m) and self.state[m] == ACTIVE and self.minus_adj[m]:
                    break
            p = min(self.minus_adj[m], key=lambda q: (len(self.plus_adj[q]), q))
            self.match(p, m)
        else:
            while True:
                neg, v = heapq.heappop(self.gain_heap)
                if -neg == self.ds.gain(v) and -neg > 0:
                    break
            self.make_input(v)

    def _finish_matching(self):
        left = [m for m in range(self.g.n) if self.state[m] == ACTIVE and self.minus_adj[m]]
        adj = {m: sorted(self.minus_adj[m]) for m in left}
        match_l, _ = _hopcroft_karp(left, adj, self.g.n)
        for m in left:
            p = match_l[m]
            if p >= 0 and self.state[m] == ACTIVE:
                self.match(p, m)

    def run(self):
        while True:
            if self.step():
                continue
            if not self.b_edges and not self.ds.n_links:
                return
            self.fallback()

    def matched_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.partner[m], m) for m in range(self.g.n) if self.state[m] == MATCHED)


def _certify(g: DiGraph, gl: DiGraph, inputs: tuple[int, ...], matching: Matching) -> bool:
    unmatched = set(matching.unmatched_minus())
    links = set(g.links)
    return (
        unmatched == set(inputs)
        and all(e in links for e in matching.edges)
        and dominates(gl, inputs)
    )


class _Refiner:
    """Valid input set with its witness matching, shrunk by dropping redundant inputs.

    ``mate_minus[m]`` is the plus partner of ``m`` (or -1 for an input).
    """

    def __init__(self, g: DiGraph, gl: DiGraph, mate_minus: list[int]):
        self.g = g
        self.gl = gl
        self.mate_minus = list(mate_minus)
        self.mate_plus = [-1] * g.n
        for m, p in enumerate(self.mate_minus):
            if p >= 0:
                self.mate_plus[p] = m
        self.inputs = {m for m, p in enumerate(self.mate_minus) if p < 0}
        # cover[v]: inputs among v and its in-neighbours in G_l
        self.cover = [0] * g.n
        for v in self.inputs:
            self._add_cover(v, 1)

    def _add_cover(self, v: int, d: int):
        self.cover[v] += d
        for w in self.gl.successors(v):
            self.cover[w] += d

    def _still_dominated(self, v: int) -> bool:
        cover = self.cover
        return cover[v] >= 2 and all(cover[w] >= 2 for w in self.gl.successors(v))

    def _augment(self, v: int) -> bool:
        # alternating BFS from minus v to a free plus vertex
        via = {v: None}
        seen = set()
        queue = deque([v])
        while queue:
            m = queue.popleft()
            for p in self.g.predecessors(m):
                if p in seen:
                    continue
                seen.add(p)
                q = self.mate_plus[p]
                if q < 0:
                    while True:
                        nxt = via[m]
                        self.mate_minus[m] = p
                        self.mate_plus[p] = m
                        if nxt is None:
                            return True
                        p, m = nxt
                if q not in via:
                    via[q] = (p, m)
                    queue.append(q)
        return False

    def prune(self):
        order = sorted(self.inputs, key=lambda v: (len(self.gl.successors(v)), v))
        for v in order:
            if not self.g.predecessors(v) or not self._still_dominated(v):
                continue
            if self._augment(v):
                self.inputs.discard(v)
                self._add_cover(v, -1)


def _certificate(g: DiGraph, gl: DiGraph) -> list[int]:
    """Witness matching behind the upper bound: a maximum matching with the
    edges into a greedy dominating set of ``G_l`` dropped."""
    mate = [-1] * g.n
    for p, m in hopcroft_karp(bipartite_repr(g)).edges:
        mate[m] = p
    for v in dslr_complete(gl):
        mate[v] = -1
    return mate


def solve_heuristic(g: DiGraph, ell, seed: int | None = 0, refine: bool = True) -> Solution:
    """Greedy input set with longest control chain at most ``ell``.

    Rule priority: plus-side leaf matching, DS1, gated minus-side leaf
    matching, gated DS2, gated DS3; lowest id first within a rule. With
    ``refine`` the result is compared with the upper-bound witness set
    (maximum-matching unmatched nodes plus a greedy dominating set), the
    smaller one is kept, and inputs that are redundant are then dropped.
    The procedure is deterministic; ``seed`` is carried for provenance only.
    """
    check_ell(ell)
    run = _Coupled(g, ell)
    run.run()
    mate = [-1] * g.n
    for p, m in run.matched_edges():
        mate[m] = p
    if refine:
        candidates = []
        for start in (mate, _certificate(g, run.gl)):
            r = _Refiner(g, run.gl, start)
            r.prune()
            candidates.append(r)
        best = min(candidates, key=lambda r: len(r.inputs))
        mate = best.mate_minus
    inputs = tuple(m for m in range(g.n) if mate[m] < 0)
    matching = Matching(g.n, tuple((p, m) for m, p in enumerate(mate) if p >= 0))
    if not _certify(g, run.gl, inputs, matching):
        raise AssertionError("heuristic produced an invalid input set")
    m_core, ds_core = run.first_stall or (0, 0)
    return Solution(
        inputs=inputs,
        valid=True,
        method="heuristic",
        ell=ell,
        seed=seed,
        m_core_size=m_core,
        ds_core_size=ds_core,
        matching=matching,
    )


def bounds(g: DiGraph, ell, exact_ds: bool = False) -> Bounds:
    """Lower and upper bounds on the minimum input count.

    ``n_ds`` is the greedy dominating-set size of ``G_l`` (an overestimate)
    unless ``exact_ds`` asks for an enumerated minimum.
    """
    check_ell(ell)
    n_m = g.n - len(hopcroft_karp(bipartite_repr(g)))
    gl = accessibility_graph(g, ell)
    if exact_ds:
        from .exact import min_dominating_set_bruteforce

        n_ds = len(min_dominating_set_bruteforce(gl))
    else:
        n_ds = len(dslr_complete(gl))
    n_s = len(sources(g))
    return Bounds(n_m=n_m, n_ds=n_ds, n_s=n_s, lower=min(n_m, n_ds), upper=n_m + n_ds - n_s)
