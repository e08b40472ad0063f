"""Greedy minimum dominating set by generalized leaf removal (rules DS1-DS3)."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import IntEnum

from .graph import DiGraph

__all__ = ["NodeLabel", "DslrResult", "DsState", "Worklist", "dslr", "dslr_complete"]


class NodeLabel(IntEnum):
    UNOBSERVED = 0
    OBSERVED = 1
    DOMINATING = 2


class Worklist:
    """Min-heap of node ids without duplicates; validity is checked on pop."""

    __slots__ = ("heap", "members")

    def __init__(self, items=()):
        self.heap = sorted(set(items))
        self.members = set(self.heap)

    def push(self, v: int):
        if v not in self.members:
            self.members.add(v)
            heapq.heappush(self.heap, v)

    def pop_valid(self, ok):
        heap, members = self.heap, self.members
        while heap:
            v = heapq.heappop(heap)
            members.discard(v)
            if ok(v):
                return v
        return None


class DsState:
    """Residual digraph with observation labels.

    Links into observed nodes are dropped as soon as the node is observed,
    so every residual link points at an unobserved node. ``touch`` is
    called with every node whose links or label changed.
    """

    def __init__(self, g: DiGraph, touch=None):
        self.n = g.n
        self.succ = [set(g.successors(v)) for v in range(g.n)]
        self.pred = [set(g.predecessors(v)) for v in range(g.n)]
        for v in range(g.n):
            self.succ[v].discard(v)
            self.pred[v].discard(v)
        self.n_links = sum(len(s) for s in self.succ)
        self.label = [NodeLabel.UNOBSERVED] * g.n
        self.touch = touch or (lambda v: None)

    def remove_link(self, u: int, w: int):
        self.succ[u].discard(w)
        self.pred[w].discard(u)
        self.n_links -= 1
        self.touch(u)
        self.touch(w)

    def _drop_in_links(self, w: int):
        for u in self.pred[w]:
            self.succ[u].discard(w)
            self.n_links -= 1
            self.touch(u)
        self.pred[w] = set()

    def observe(self, w: int):
        if self.label[w] == NodeLabel.UNOBSERVED:
            self.label[w] = NodeLabel.OBSERVED
            self._drop_in_links(w)
            self.touch(w)

    def dominate(self, v: int):
        was = self.label[v]
        self.label[v] = NodeLabel.DOMINATING
        if was == NodeLabel.UNOBSERVED:
            self._drop_in_links(v)
        for w in sorted(self.succ[v]):
            self.observe(w)
        self.touch(v)

    def gain(self, v: int) -> int:
        """Unobserved nodes that promoting ``v`` would cover."""
        if self.label[v] == NodeLabel.DOMINATING:
            return 0
        return len(self.succ[v]) + (self.label[v] == NodeLabel.UNOBSERVED)

    # rule predicates; valid because residual links only enter unobserved nodes
    def ds1(self, v: int) -> bool:
        return self.label[v] == NodeLabel.UNOBSERVED and not self.pred[v]

    def ds2(self, v: int) -> bool:
        return self.label[v] == NodeLabel.UNOBSERVED and len(self.pred[v]) == 1 and not self.succ[v]

    def ds3(self, v: int) -> bool:
        return self.label[v] == NodeLabel.OBSERVED and len(self.succ[v]) == 1

    def links(self) -> list[tuple[int, int]]:
        return sorted((u, w) for u in range(self.n) for w in self.succ[u])

    def dominating(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.label[v] == NodeLabel.DOMINATING)


@dataclass(frozen=True)
class DslrResult:
    dominating: tuple[int, ...]
    labels: tuple[NodeLabel, ...]
    ds_core_links: tuple[tuple[int, int], ...]


class _Dslr:
    def __init__(self, g: DiGraph):
        self.ds = DsState(g, touch=self._touch)
        nodes = range(g.n)
        self.wl = (Worklist(nodes), Worklist(nodes), Worklist(nodes))
        self.best = [(-self.ds.gain(v), v) for v in nodes]
        heapq.heapify(self.best)

    def _touch(self, v: int):
        for wl in self.wl:
            wl.push(v)
        heapq.heappush(self.best, (-self.ds.gain(v), v))

    def run(self):
        ds = self.ds
        wl1, wl2, wl3 = self.wl
        while True:
            v = wl1.pop_valid(ds.ds1)
            if v is not None:
                ds.dominate(v)
                continue
            v = wl2.pop_valid(ds.ds2)
            if v is not None:
                (w,) = ds.pred[v]
                ds.dominate(w)
                continue
            v = wl3.pop_valid(ds.ds3)
            if v is not None:
                (w,) = ds.succ[v]
                ds.remove_link(v, w)
                continue
            return

    def promote_best(self):
        # lazy max-heap on coverage gain; stale entries carry an outdated gain
        ds = self.ds
        while True:
            neg, v = heapq.heappop(self.best)
            if -neg == ds.gain(v) and -neg > 0:
                ds.dominate(v)
                return

    def result(self) -> DslrResult:
        ds = self.ds
        return DslrResult(ds.dominating(), tuple(ds.label), tuple(ds.links()))


def dslr(g: DiGraph) -> DslrResult:
    """Apply DS1 > DS2 > DS3 (lowest id first within a rule) until none fires.

    Self-loops are ignored: a node always covers itself.
    """
    state = _Dslr(g)
    state.run()
    return state.result()


def dslr_complete(g: DiGraph) -> tuple[int, ...]:
    """Leaf removal; on a stall promote the node covering most unobserved nodes.

    Ties go to the lowest id. Returns a dominating set of ``g``.
    """
    state = _Dslr(g)
    state.run()
    while state.ds.n_links:
        state.promote_best()
        state.run()
    return state.ds.dominating()
