"""Exact solvers and integer-programming export.

Everything here is meant for small instances or as ground truth: subset
enumeration, a combinatorial branch-and-bound, both 0/1 formulations of
the problem (matching variables, and cycle cover through an auxiliary
node), an LP-format writer, and the minimum-dominating-set reduction.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations

from .graph import DiGraph, accessibility_graph, bipartite_repr, check_ell, sources
from .matching import _hopcroft_karp, hopcroft_karp, max_matching_leaving_unmatched
from .solver import Solution, solve_heuristic

__all__ = [
    "TooLarge",
    "IlpModel",
    "BnbResult",
    "brute_force_min_inputs",
    "min_dominating_set_bruteforce",
    "branch_and_bound",
    "build_ilp_naive",
    "build_ilp_cycling",
    "solve_ilp_exhaustive",
    "write_lp",
    "read_solution",
    "check_solution",
    "inputs_from_assignment",
    "mds_via_reduction",
]

DEFAULT_CAP = 16


class TooLarge(ValueError):
    pass


def _closed_in_masks(gl: DiGraph) -> list[int]:
    return [(1 << v) | sum(1 << u for u in gl.predecessors(v) if u != v) for v in range(gl.n)]


def brute_force_min_inputs(g: DiGraph, ell, cap: int = DEFAULT_CAP) -> Solution:
    """Smallest valid input set by enumeration in increasing cardinality.

    Source nodes are always inputs, so they are fixed up front; the search
    starts at the unmatched count of a maximum matching.
    """
    check_ell(ell)
    if g.n > cap:
        raise TooLarge(f"n={g.n} exceeds enumeration cap {cap}")
    b = bipartite_repr(g)
    masks = _closed_in_masks(accessibility_graph(g, ell))
    forced = sources(g)
    forced_mask = sum(1 << v for v in forced)
    free = [v for v in range(g.n) if not forced_mask >> v & 1]
    start = max(g.n - len(hopcroft_karp(b)), len(forced))
    for k in range(start, g.n + 1):
        for extra in combinations(free, k - len(forced)):
            chosen = forced_mask
            for v in extra:
                chosen |= 1 << v
            if all(chosen & m for m in masks):
                s = forced + extra
                if max_matching_leaving_unmatched(b, s):
                    return Solution(tuple(sorted(s)), True, "exact_bruteforce", ell=ell)
    raise AssertionError("unreachable: all nodes as inputs is always valid")


def min_dominating_set_bruteforce(g: DiGraph, cap: int = 22) -> tuple[int, ...]:
    if g.n > cap:
        raise TooLarge(f"n={g.n} exceeds enumeration cap {cap}")
    masks = _closed_in_masks(g)
    for k in range(g.n + 1):
        for s in combinations(range(g.n), k):
            chosen = sum(1 << v for v in s)
            if all(chosen & m for m in masks):
                return s
    return tuple(range(g.n))


# branch and bound


@dataclass(frozen=True)
class BnbResult:
    solution: Solution
    explored: int
    optimal: bool


class _Abort(Exception):
    pass


class _Bnb:
    """Binary decisions input / not-input over nodes.

    Invariant at every search node: ``mm``/``pm`` is a maximum matching of
    the minus copies outside ``S`` that saturates every node in ``X``.
    """

    def __init__(self, g: DiGraph, ell, node_limit: int, best: tuple[int, ...]):
        gl = accessibility_graph(g, ell)
        self.n = g.n
        self.cand = _closed_in_masks(gl)
        self.cover = [(1 << u) | sum(1 << w for w in gl.successors(u)) for u in range(g.n)]
        self.minus_adj = [g.predecessors(m) for m in range(g.n)]
        self.plus_adj = [g.successors(p) for p in range(g.n)]
        self.full = (1 << g.n) - 1
        self.node_limit = node_limit
        self.explored = 0
        self.best = tuple(best)

    # matching repair
    def _aug_from_plus(self, p, s_mask, mm, pm, seen) -> bool:
        for m in self.plus_adj[p]:
            if s_mask >> m & 1 or m in seen:
                continue
            seen.add(m)
            q = mm[m]
            if q < 0 or self._aug_from_plus(q, s_mask, mm, pm, seen):
                mm[m] = p
                pm[p] = m
                return True
        return False

    def _claim_for_minus(self, u, x_mask, mm, pm, seen) -> bool:
        # alternating path from u- that frees a matched minus outside X
        for p in self.minus_adj[u]:
            if p in seen:
                continue
            seen.add(p)
            w = pm[p]
            if w < 0:
                ok = True
            elif not x_mask >> w & 1:
                mm[w] = -1
                ok = True
            else:
                ok = self._claim_for_minus(w, x_mask, mm, pm, seen)
            if ok:
                pm[p] = u
                mm[u] = p
                return True
        return False

    def add_input(self, u, s_mask, mm, pm):
        p = mm[u]
        if p >= 0:
            mm[u] = -1
            pm[p] = -1
            self._aug_from_plus(p, s_mask, mm, pm, set())

    def add_excluded(self, u, x_mask, mm, pm) -> bool:
        if mm[u] >= 0:
            return True
        return self._claim_for_minus(u, x_mask, mm, pm, set())

    def search(self, s_mask, x_mask, dominated, mm, pm):
        self.explored += 1
        if self.explored > self.node_limit:
            raise _Abort
        n_s = s_mask.bit_count()
        unmatched = [m for m in range(self.n) if mm[m] < 0 and not s_mask >> m & 1]
        base = n_s + len(unmatched)

        undominated = []
        for v in range(self.n):
            if not dominated >> v & 1:
                avail = self.cand[v] & ~x_mask
                if not avail:
                    return
                undominated.append((avail.bit_count(), v, avail))

        # completing with the unmatched copies is always matching-feasible
        completion = dominated
        for m in unmatched:
            completion |= self.cover[m]
        if completion == self.full and base < len(self.best):
            self.best = tuple(
                v for v in range(self.n) if s_mask >> v & 1 or (mm[v] < 0)
            )
        if not undominated:
            return

        undominated.sort()
        used = 0
        packing = 0
        for _, _, avail in undominated:
            if not avail & used:
                used |= avail
                packing += 1
        if max(base, n_s + packing) >= len(self.best):
            return

        _, v, avail = undominated[0]
        fresh = ~dominated
        u = max(
            (c for c in range(self.n) if avail >> c & 1),
            key=lambda c: ((self.cover[c] & fresh).bit_count(), -c),
        )

        s1 = s_mask | 1 << u
        mm1, pm1 = mm[:], pm[:]
        self.add_input(u, s1, mm1, pm1)
        self.search(s1, x_mask, dominated | self.cover[u], mm1, pm1)

        x2 = x_mask | 1 << u
        mm2, pm2 = mm[:], pm[:]
        if self.add_excluded(u, x2, mm2, pm2):
            self.search(s_mask, x2, dominated, mm2, pm2)


def branch_and_bound(g: DiGraph, ell, node_limit: int = 1_000_000, seed: int | None = 0) -> BnbResult:
    """Depth-first search seeded with the heuristic solution as incumbent.

    Prunes on undominatable nodes, on the unmatched count of the residual
    maximum matching, and on a disjoint-neighborhood packing bound. If the
    node budget runs out the incumbent is returned with ``optimal=False``.
    """
    check_ell(ell)
    incumbent = solve_heuristic(g, ell, seed)
    if node_limit <= 0:
        return BnbResult(incumbent, 0, False)
    bnb = _Bnb(g, ell, node_limit, incumbent.inputs)
    s_mask = sum(1 << v for v in sources(g))
    dominated = 0
    for v in sources(g):
        dominated |= bnb.cover[v]
    match_l, match_r = _hopcroft_karp(list(range(g.n)), bnb.minus_adj, g.n)
    mm = [match_l[m] for m in range(g.n)]
    pm = list(match_r)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * g.n + 1000))
    optimal = True
    try:
        bnb.search(s_mask, 0, dominated, mm, pm)
    except _Abort:
        optimal = False
    finally:
        sys.setrecursionlimit(limit)

    if bnb.best == incumbent.inputs:
        sol = incumbent if not optimal else Solution(incumbent.inputs, True, "exact_bnb", ell=ell, seed=seed)
    else:
        sol = Solution(tuple(sorted(bnb.best)), True, "exact_bnb", ell=ell, seed=seed)
    return BnbResult(sol, bnb.explored, optimal)


# integer programs

Terms = list[tuple[str, float]]


@dataclass
class IlpModel:
    """0/1 program: minimize ``objective + objective_constant`` subject to rows.

    Each constraint is ``(name, terms, sense, rhs)`` with sense one of
    ``"<="``, ``">="``, ``"="``.
    """

    name: str
    objective: Terms
    constraints: list[tuple[str, Terms, str, float]]
    binaries: list[str]
    objective_constant: float = 0.0
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(set(self.binaries)) != len(self.binaries):
            raise ValueError("duplicate variable names")
        self._index = {v: i for i, v in enumerate(self.binaries)}
        names = [c[0] for c in self.constraints]
        if len(set(names)) != len(names):
            raise ValueError("duplicate constraint names")
        for var, _ in self.objective:
            self._check_var(var)
        for name, terms, sense, _ in self.constraints:
            if sense not in ("<=", ">=", "="):
                raise ValueError(f"{name}: bad sense {sense!r}")
            for var, _ in terms:
                self._check_var(var)

    def _check_var(self, var):
        if var not in self._index:
            raise ValueError(f"variable {var!r} is not declared binary")

    def constraint(self, name: str):
        for c in self.constraints:
            if c[0] == name:
                return c
        raise KeyError(name)


def _var(prefix: str, i: int, j: int) -> str:
    return f"{prefix}_{i}_{j}"


def build_ilp_naive(g: DiGraph, ell) -> IlpModel:
    """One binary per link; a link at 1 is in the matching.

    The objective counts unmatched nodes, ``N - sum(e)``. Each node is
    covered by an unmatched node among itself and its in-neighbors in
    ``G_l``, written with the constant moved to the right-hand side.
    """
    check_ell(ell)
    gl = accessibility_graph(g, ell)
    vars_ = [_var("e", i, j) for i, j in g.links]
    incoming = [[_var("e", i, v) for i in g.predecessors(v)] for v in range(g.n)]
    rows = []
    for v in range(g.n):
        out = [(_var("e", v, j), 1.0) for j in g.successors(v)]
        if out:
            rows.append((f"out_{v}", out, "<=", 1.0))
    for v in range(g.n):
        inn = [(x, 1.0) for x in incoming[v]]
        if inn:
            rows.append((f"in_{v}", inn, "<=", 1.0))
    for v in range(g.n):
        cover = [v] + [k for k in gl.predecessors(v)]
        terms = [(x, -1.0) for k in cover for x in incoming[k]]
        rows.append((f"dom_{v}", terms, ">=", 1.0 - len(cover)))
    objective = [(x, -1.0) for x in vars_]
    return IlpModel("lcc_naive", objective, rows, vars_, objective_constant=float(g.n))


def build_ilp_cycling(g: DiGraph, ell) -> IlpModel:
    """Cycle cover of ``g`` plus an auxiliary node ``x = n`` linked both ways to every node.

    Links leaving ``x`` inside the cover point at input nodes.
    """
    check_ell(ell)
    gl = accessibility_graph(g, ell)
    x = g.n
    links = list(g.links) + [(x, j) for j in range(g.n)] + [(i, x) for i in range(g.n)]
    vars_ = [_var("y", i, j) for i, j in links]
    rows = []
    for v in range(g.n):
        out = [(_var("y", v, j), 1.0) for j in g.successors(v)] + [(_var("y", v, x), 1.0)]
        rows.append((f"out_{v}", out, "=", 1.0))
    for v in range(g.n):
        inn = [(_var("y", i, v), 1.0) for i in g.predecessors(v)] + [(_var("y", x, v), 1.0)]
        rows.append((f"in_{v}", inn, "=", 1.0))
    for v in range(g.n):
        cover = [v] + list(gl.predecessors(v))
        rows.append((f"cover_{v}", [(_var("y", x, j), 1.0) for j in cover], ">=", 1.0))
    balance = [(_var("y", x, j), 1.0) for j in range(g.n)] + [(_var("y", i, x), -1.0) for i in range(g.n)]
    if balance:
        rows.append(("balance", balance, "=", 0.0))
    objective = [(_var("y", x, j), 1.0) for j in range(g.n)]
    return IlpModel("lcc_cycling", objective, rows, vars_)


def _row_ok(act, lo, hi, sense, rhs, tol=1e-9) -> bool:
    if sense == "<=":
        return act + lo <= rhs + tol
    if sense == ">=":
        return act + hi >= rhs - tol
    return act + lo <= rhs + tol and act + hi >= rhs - tol


def solve_ilp_exhaustive(model: IlpModel) -> tuple[float, dict[str, int]] | None:
    """Optimal 0/1 assignment by depth-first enumeration with row-bound pruning.

    Returns ``None`` when infeasible. Exponential; intended for models with
    a few dozen variables.
    """
    nv = len(model.binaries)
    idx = model._index
    obj = [0.0] * nv
    for var, c in model.objective:
        obj[idx[var]] += c
    senses, rhs, act, lo, hi = [], [], [], [], []
    var_rows: list[list[tuple[int, float]]] = [[] for _ in range(nv)]
    for r, (_, terms, sense, b) in enumerate(model.constraints):
        coefs: dict[int, float] = {}
        for var, a in terms:
            coefs[idx[var]] = coefs.get(idx[var], 0.0) + a
        senses.append(sense)
        rhs.append(b)
        act.append(0.0)
        lo.append(sum(a for a in coefs.values() if a < 0))
        hi.append(sum(a for a in coefs.values() if a > 0))
        for i, a in coefs.items():
            var_rows[i].append((r, a))
    if not all(_row_ok(act[r], lo[r], hi[r], senses[r], rhs[r]) for r in range(len(senses))):
        return None

    order = list(range(nv))
    suffix = [0.0] * (nv + 1)
    for k in range(nv - 1, -1, -1):
        suffix[k] = suffix[k + 1] + min(0.0, obj[order[k]])
    best = [float("inf"), None]
    values = [0] * nv

    def dfs(k, value):
        if value + suffix[k] >= best[0] - 1e-9:
            return
        if k == nv:
            best[0] = value
            best[1] = values[:]
            return
        i = order[k]
        rows = var_rows[i]
        for r, a in rows:
            if a < 0:
                lo[r] -= a
            else:
                hi[r] -= a
        for val in ((1, 0) if obj[i] <= 0 else (0, 1)):
            if val:
                for r, a in rows:
                    act[r] += a
            if all(_row_ok(act[r], lo[r], hi[r], senses[r], rhs[r]) for r, _ in rows):
                values[i] = val
                dfs(k + 1, value + obj[i] * val)
            if val:
                for r, a in rows:
                    act[r] -= a
        values[i] = 0
        for r, a in rows:
            if a < 0:
                lo[r] += a
            else:
                hi[r] += a

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, nv + 1000))
    try:
        dfs(0, 0.0)
    finally:
        sys.setrecursionlimit(limit)
    if best[1] is None:
        return None
    assignment = {model.binaries[i]: best[1][i] for i in range(nv)}
    return best[0] + model.objective_constant, assignment


def inputs_from_assignment(model: IlpModel, n: int, assignment: dict[str, float]) -> tuple[int, ...]:
    """Input nodes encoded by a 0/1 assignment of either formulation."""
    if model.name == "lcc_cycling":
        return tuple(j for j in range(n) if round(assignment.get(_var("y", n, j), 0)) == 1)
    matched = set()
    for var, val in assignment.items():
        if round(val) == 1:
            _, _, j = var.split("_")
            matched.add(int(j))
    return tuple(v for v in range(n) if v not in matched)


def _fmt(c: float) -> str:
    return f"{c:.12g}"


def _expr(terms: Terms, per_line: int = 8) -> list[str]:
    chunks = []
    for k, (var, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        term = f"{var}" if mag == 1 else f"{_fmt(mag)} {var}"
        if k == 0:
            chunks.append(f"- {term}" if c < 0 else term)
        else:
            chunks.append(f"{sign} {term}")
    return [" ".join(chunks[i:i + per_line]) for i in range(0, len(chunks), per_line)]


def write_lp(model: IlpModel) -> str:
    """Render the model in CPLEX LP text format (deterministic ordering)."""
    out = [f"\\ model {model.name}", "Minimize"]
    obj_lines = _expr(model.objective)
    if not obj_lines and model.binaries:
        obj_lines = [f"0 {model.binaries[0]}"]
    const = model.objective_constant
    if const:
        tail = f"{'-' if const < 0 else '+'} {_fmt(abs(const))}"
        if obj_lines:
            obj_lines[-1] = f"{obj_lines[-1]} {tail}"
        else:
            obj_lines = [_fmt(const)]
    if not obj_lines:
        obj_lines = ["0"]
    out.append(f" obj: {obj_lines[0]}")
    out.extend(f"   {line}" for line in obj_lines[1:])
    out.append("Subject To")
    for name, terms, sense, rhs in model.constraints:
        if not terms:
            out.append(f"\\ {name}: empty row, 0 {sense} {_fmt(rhs)}")
            continue
        lines = _expr(terms)
        lines[-1] = f"{lines[-1]} {sense} {_fmt(rhs)}"
        out.append(f" {name}: {lines[0]}")
        out.extend(f"   {line}" for line in lines[1:])
    if model.binaries:
        out.append("Binary")
        out.extend(f" {v}" for v in model.binaries)
    out.append("End")
    return "\n".join(out) + "\n"


def read_solution(text: str) -> dict[str, float]:
    """Parse ``name value`` lines; blank lines and ``#`` comments are skipped."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'name value', got {raw!r}")
        values[parts[0]] = float(parts[1])
    return values


def check_solution(model: IlpModel, values: dict[str, float], tol: float = 1e-6) -> list[str]:
    """Names of violated constraints (plus ``binary:<var>`` for non-0/1 values)."""
    bad = []
    for var in model.binaries:
        val = values.get(var, 0.0)
        if min(abs(val), abs(val - 1)) > tol:
            bad.append(f"binary:{var}")
    for name, terms, sense, rhs in model.constraints:
        act = sum(c * values.get(var, 0.0) for var, c in terms)
        if not _row_ok(act, 0.0, 0.0, sense, rhs, tol):
            bad.append(name)
    return bad


def mds_via_reduction(g: DiGraph, cap: int = DEFAULT_CAP, node_limit: int = 10_000_000) -> tuple[int, ...]:
    """Minimum dominating set of ``g`` as the exact ``ell = 1`` input set of ``g`` with all self-loops."""
    looped = g.with_self_loops()
    if g.n <= cap:
        return brute_force_min_inputs(looped, 1, cap=cap).inputs
    res = branch_and_bound(looped, 1, node_limit=node_limit)
    if not res.optimal:
        raise TooLarge(f"branch and bound exceeded {node_limit} nodes")
    return res.solution.inputs
