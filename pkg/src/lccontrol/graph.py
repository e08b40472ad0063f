"""Directed graphs, their bipartite split, and l-step accessibility."""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

__all__ = [
    "INF",
    "DiGraph",
    "BipartiteGraph",
    "GraphError",
    "ParseError",
    "IdOutOfRange",
    "EmptyInputSet",
    "bipartite_repr",
    "accessibility_graph",
    "lcc_length",
    "sources",
    "dominates",
    "read_edge_list",
    "write_edge_list",
    "read_weighted_edge_list",
    "check_ell",
]

# Unbounded chain length; reachability closure when passed as ``ell``.
INF = math.inf


class GraphError(ValueError):
    pass


class IdOutOfRange(GraphError):
    pass


class EmptyInputSet(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def check_ell(ell) -> None:
    if ell == INF:
        return
    if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
        raise ValueError(f"ell must be a positive integer or INF, got {ell!r}")


class DiGraph:
    """Immutable simple digraph on nodes ``0..n-1``.

    Links are deduplicated and stored sorted, so two graphs with the same
    link set compare (and hash) equal regardless of construction order.
    """

    __slots__ = ("n", "links", "allow_self_loops", "_succ", "_pred", "_hash")

    def __init__(self, n: int, links: Iterable[tuple[int, int]] = (), allow_self_loops: bool = False):
        if n < 0:
            raise GraphError("node count must be nonnegative")
        seen = set()
        for tail, head in links:
            tail, head = int(tail), int(head)
            if not (0 <= tail < n and 0 <= head < n):
                raise IdOutOfRange(f"link ({tail}, {head}) outside [0, {n})")
            if tail == head and not allow_self_loops:
                raise GraphError(f"self-loop on node {tail} but self-loops are not allowed")
            seen.add((tail, head))
        self.n = n
        self.links = tuple(sorted(seen))
        self.allow_self_loops = allow_self_loops
        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)]
        for tail, head in self.links:
            succ[tail].append(head)
            pred[head].append(tail)
        self._succ = tuple(tuple(s) for s in succ)
        self._pred = tuple(tuple(p) for p in pred)
        self._hash = hash((n, self.links))

    def __eq__(self, other):
        if not isinstance(other, DiGraph):
            return NotImplemented
        return self.n == other.n and self.links == other.links

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DiGraph(n={self.n}, links={len(self.links)})"

    @property
    def n_links(self) -> int:
        return len(self.links)

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def out_degrees(self) -> list[int]:
        return [len(s) for s in self._succ]

    def in_degrees(self) -> list[int]:
        return [len(p) for p in self._pred]

    def has_self_loops(self) -> bool:
        return any(t == h for t, h in self.links)

    def without_self_loops(self) -> DiGraph:
        if not self.has_self_loops():
            return self
        return DiGraph(self.n, [(t, h) for t, h in self.links if t != h])

    def with_self_loops(self) -> DiGraph:
        """Copy of the graph with a self-loop added on every node."""
        loops = [(v, v) for v in range(self.n)]
        return DiGraph(self.n, list(self.links) + loops, allow_self_loops=True)


@dataclass(frozen=True)
class BipartiteGraph:
    """Split-node view: edge ``(v, w)`` joins ``v+`` to ``w-`` for link ``v -> w``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    plus_adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())
    minus_adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self.plus_adj and self.n:
            plus = [[] for _ in range(self.n)]
            minus = [[] for _ in range(self.n)]
            for p, m in self.edges:
                if not (0 <= p < self.n and 0 <= m < self.n):
                    raise IdOutOfRange(f"edge ({p}, {m}) outside [0, {self.n})")
                plus[p].append(m)
                minus[m].append(p)
            object.__setattr__(self, "plus_adj", tuple(tuple(x) for x in plus))
            object.__setattr__(self, "minus_adj", tuple(tuple(x) for x in minus))


def bipartite_repr(g: DiGraph) -> BipartiteGraph:
    return BipartiteGraph(g.n, g.links)


@lru_cache(maxsize=64)
def accessibility_graph(g: DiGraph, ell) -> DiGraph:
    """Link ``v -> w`` (v != w) iff ``w`` is reachable from ``v`` in at most ``ell`` hops.

    Built by one breadth-first search per node, truncated at depth ``ell``.
    """
    check_ell(ell)
    links = []
    succ = g._succ
    for src in range(g.n):
        depth = {src: 0}
        frontier = [src]
        d = 0
        while frontier and d < ell:
            d += 1
            nxt = []
            for u in frontier:
                for w in succ[u]:
                    if w not in depth:
                        depth[w] = d
                        nxt.append(w)
            frontier = nxt
        links.extend((src, w) for w in depth if w != src)
    return DiGraph(g.n, links)


def lcc_length(g: DiGraph, s: Iterable[int]) -> int | None:
    """Longest control chain of input set ``s``.

    Returns the largest distance from the nearest input to any node, or
    ``None`` if some node cannot be reached from any input.
    """
    s = sorted(set(s))
    if not s:
        raise EmptyInputSet("input set is empty")
    dist = [-1] * g.n
    queue = deque()
    for v in s:
        if not 0 <= v < g.n:
            raise IdOutOfRange(f"input {v} outside [0, {g.n})")
        dist[v] = 0
        queue.append(v)
    while queue:
        u = queue.popleft()
        for w in g._succ[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    if min(dist) < 0:
        return None
    return max(dist)


def sources(g: DiGraph) -> tuple[int, ...]:
    return tuple(v for v in range(g.n) if not g._pred[v])


def dominates(g: DiGraph, s: Iterable[int]) -> bool:
    """True iff every node is in ``s`` or has an in-neighbor in ``s``."""
    members = set(s)
    return all(v in members or any(u in members for u in g._pred[v]) for v in range(g.n))


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def read_edge_list(text: str, allow_self_loops: bool = False, one_based: bool = False) -> DiGraph:
    """Parse ``tail head`` lines; ``#`` starts a comment, ``n=<count>`` fixes the node count."""
    n_header = None
    links = []
    shift = 1 if one_based else 0
    max_id = -1
    for lineno, line in _tokens(text):
        if line.startswith("n="):
            try:
                n_header = int(line[2:])
            except ValueError:
                raise ParseError(lineno, f"bad node-count header {line!r}") from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 'tail head', got {line!r}")
        try:
            tail, head = int(parts[0]) - shift, int(parts[1]) - shift
        except ValueError:
            raise ParseError(lineno, f"non-integer node id in {line!r}") from None
        if tail < 0 or head < 0:
            raise IdOutOfRange(f"line {lineno}: negative node id")
        if tail == head and not allow_self_loops:
            raise ParseError(lineno, f"self-loop on {tail} (self-loops not allowed)")
        links.append((tail, head))
        max_id = max(max_id, tail, head)
    n = n_header if n_header is not None else max_id + 1
    if max_id >= n:
        raise IdOutOfRange(f"node id {max_id} exceeds header n={n}")
    return DiGraph(n, links, allow_self_loops=allow_self_loops)


def write_edge_list(g: DiGraph) -> str:
    lines = [f"n={g.n}"]
    lines.extend(f"{t} {h}" for t, h in g.links)
    return "\n".join(lines) + "\n"


def read_weighted_edge_list(text: str, one_based: bool = False) -> tuple[DiGraph, dict[tuple[int, int], float]]:
    """Parse ``tail head [weight]`` lines; missing weights default to 1.0."""
    n_header = None
    weights: dict[tuple[int, int], float] = {}
    shift = 1 if one_based else 0
    max_id = -1
    for lineno, line in _tokens(text):
        if line.startswith("n="):
            try:
                n_header = int(line[2:])
            except ValueError:
                raise ParseError(lineno, f"bad node-count header {line!r}") from None
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(lineno, f"expected 'tail head [weight]', got {line!r}")
        try:
            tail, head = int(parts[0]) - shift, int(parts[1]) - shift
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError(lineno, f"malformed entry {line!r}") from None
        if tail < 0 or head < 0:
            raise IdOutOfRange(f"line {lineno}: negative node id")
        weights[(tail, head)] = w
        max_id = max(max_id, tail, head)
    n = n_header if n_header is not None else max_id + 1
    if max_id >= n:
        raise IdOutOfRange(f"node id {max_id} exceeds header n={n}")
    return DiGraph(n, weights, allow_self_loops=True), weights
