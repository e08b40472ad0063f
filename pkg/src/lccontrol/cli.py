"""Command-line front end: ``python -m lccontrol <command> ...``.

Exit codes: 0 success, 1 usage or I/O error, 2 input set rejected by ``verify``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import energy as energy_mod
from .exact import (
    TooLarge,
    branch_and_bound,
    brute_force_min_inputs,
    build_ilp_cycling,
    build_ilp_naive,
    write_lp,
)
from .generators import (
    GenSpec,
    InvalidSpec,
    chain_graph,
    cycle_graph,
    degree_preserving_randomize,
    generate,
    rewiring_trials,
    star_graph,
)
from .graph import (
    INF,
    GraphError,
    accessibility_graph,
    read_edge_list,
    read_weighted_edge_list,
    write_edge_list,
)
from .metrics import ExperimentRecord, heterogeneity, records_to_csv
from .solver import bounds, solve_heuristic, verify_input_set

SEED_ENV = "LCC_SEED"


class UsageError(Exception):
    pass


# argument parsing helpers

def parse_ell(text: str):
    if text.lower() in ("inf", "infinity"):
        return INF
    try:
        ell = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ell must be a positive integer or 'inf', got {text!r}") from None
    if ell < 1:
        raise argparse.ArgumentTypeError("ell must be at least 1")
    return ell


def parse_values(text: str, cast=float) -> list:
    """``"1,2,3"`` or ``"start:stop:step"`` (stop inclusive)."""
    if ":" in text:
        parts = [float(x) for x in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        start, stop, step = parts
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [cast(round(start + k * step, 10)) for k in range(count)]
    return [cast(x) for x in text.split(",") if x]


def parse_gen(text: str) -> tuple[str, tuple]:
    kind, _, rest = text.partition(":")
    args = rest.split(",") if rest else []
    try:
        if kind in ("chain", "cycle", "star") and len(args) == 1:
            return kind, (int(args[0]),)
        if kind == "er" and len(args) == 2:
            return kind, (int(args[0]), float(args[1]))
        if kind == "sf" and len(args) == 3:
            return kind, (int(args[0]), float(args[1]), float(args[2]))
    except ValueError:
        pass
    raise UsageError(f"bad --gen {text!r}; use chain:n, cycle:n, star:n, er:n,c or sf:n,c,gamma")


def build_graph(args):
    """Returns (graph, weights or None)."""
    if args.gen:
        kind, params = parse_gen(args.gen)
        if kind == "chain":
            return chain_graph(*params), None
        if kind == "cycle":
            return cycle_graph(*params), None
        if kind == "star":
            return star_graph(*params), None
        model = "ER" if kind == "er" else "SF"
        gamma = params[2] if model == "SF" else None
        return generate(GenSpec(model, params[0], params[1], gamma, seed=args.seed)), None
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    if getattr(args, "weighted", False):
        return read_weighted_edge_list(text, one_based=args.one_based)
    return read_edge_list(text, allow_self_loops=args.allow_self_loops, one_based=args.one_based), None


def _config(args) -> dict:
    skip = {"func", "output", "workers"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, float) and math.isinf(value):
            value = "inf"
        out[key] = value
    return out


def config_hash(args) -> str:
    blob = json.dumps(_config(args), sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _ids_out(ids, args) -> list[int]:
    shift = 1 if args.one_based else 0
    return [int(v) + shift for v in ids]


def _emit(text: str, args):
    if args.output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(args.output, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.output}: {exc}") from None


def _report(args, payload: dict):
    payload = {"command": args.command, "seed": args.seed, "config_hash": config_hash(args), **payload}
    if "ell" in payload and isinstance(payload["ell"], float) and math.isinf(payload["ell"]):
        payload["ell"] = "inf"
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args)


def _bounds_dict(b) -> dict:
    return {"n_m": b.n_m, "n_ds": b.n_ds, "n_s": b.n_s, "lower": b.lower, "upper": b.upper}


# commands

def cmd_solve(args) -> int:
    g, _ = build_graph(args)
    sol = solve_heuristic(g, args.ell, args.seed)
    _report(args, {
        "n": g.n,
        "ell": args.ell,
        "method": sol.method,
        "inputs": _ids_out(sol.inputs, args),
        "n_inputs": sol.n_inputs,
        "valid": sol.valid,
        "m_core_size": sol.m_core_size,
        "ds_core_size": sol.ds_core_size,
        "bounds": _bounds_dict(bounds(g, args.ell)),
    })
    return 0


def cmd_exact(args) -> int:
    g, _ = build_graph(args)
    if args.method == "bruteforce":
        sol = brute_force_min_inputs(g, args.ell, cap=args.cap)
        optimal, explored = True, None
    else:
        if g.n > args.cap:
            raise TooLarge(f"n={g.n} exceeds cap {args.cap}")
        res = branch_and_bound(g, args.ell, node_limit=args.node_limit, seed=args.seed)
        sol, optimal, explored = res.solution, res.optimal, res.explored
    _report(args, {
        "n": g.n,
        "ell": args.ell,
        "method": sol.method,
        "inputs": _ids_out(sol.inputs, args),
        "n_inputs": sol.n_inputs,
        "valid": verify_input_set(g, args.ell, sol.inputs),
        "optimal": optimal,
        "explored": explored,
        "bounds": _bounds_dict(bounds(g, args.ell)),
    })
    return 0


def cmd_bounds(args) -> int:
    g, _ = build_graph(args)
    _report(args, {"n": g.n, "ell": args.ell, "bounds": _bounds_dict(bounds(g, args.ell, exact_ds=args.exact_ds))})
    return 0


def cmd_verify(args) -> int:
    g, _ = build_graph(args)
    shift = 1 if args.one_based else 0
    try:
        s = [int(x) - shift for x in args.inputs.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --inputs {args.inputs!r}") from None
    ok = verify_input_set(g, args.ell, s)
    _report(args, {"n": g.n, "ell": args.ell, "inputs": _ids_out(s, args), "n_inputs": len(s), "valid": ok})
    return 0 if ok else 2


def _instance_seed(master: int, counter: int) -> int:
    return int(np.random.SeedSequence([master, counter]).generate_state(1)[0])


def _scan_one(task):
    model, n, c, gamma, ell, seed, with_cost, with_delta, node_limit = task
    g = generate(GenSpec(model, n, c, gamma, seed=seed))
    sol = solve_heuristic(g, ell, seed)
    n_gl = accessibility_graph(g, ell).n_links
    m_frac = sol.m_core_size / g.n_links if g.n_links else 0.0
    ds_frac = sol.ds_core_size / n_gl if n_gl else 0.0
    rec = ExperimentRecord(
        model=model, n=n, c=c, gamma=gamma, ell=ell, seed=seed,
        n_i_frac=sol.n_inputs / n,
        m_core_frac=m_frac, ds_core_frac=ds_frac, core_frac=(m_frac + ds_frac) / 2,
        H=heterogeneity(g) if g.n_links else None,
    )
    if with_cost:
        rec.cost = rec.n_i_frac - solve_heuristic(g, INF, seed).n_inputs / n
    if with_delta:
        res = branch_and_bound(g, ell, node_limit=node_limit, seed=seed)
        if res.optimal:
            rec.delta = (sol.n_inputs - res.solution.n_inputs) / n
    accessibility_graph.cache_clear()
    return rec


def scan_tasks(args) -> list[tuple]:
    gammas = args.gamma if args.model == "SF" else [None]
    tasks = []
    counter = 0
    for c in args.c:
        for gamma in gammas:
            for ell in args.ell:
                for _ in range(args.instances):
                    seed = _instance_seed(args.seed, counter)
                    counter += 1
                    tasks.append((args.model, args.n, c, gamma, ell, seed, args.cost, args.delta, args.node_limit))
    return tasks


def cmd_scan(args) -> int:
    if args.model == "SF" and not args.gamma:
        raise UsageError("SF scans need --gamma")
    try:
        for c in args.c:
            GenSpec(args.model, args.n, c, (args.gamma or [None])[0]).validate()
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None
    tasks = scan_tasks(args)
    workers = args.workers or os.cpu_count() or 1
    if workers == 1:
        records = [_scan_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_scan_one, tasks, chunksize=1))
    comments = [
        f"seed={args.seed} config_hash={config_hash(args)}",
        "m_core_frac per link of g; ds_core_frac per link of G_ell",
    ]
    _emit(records_to_csv(records, comments), args)
    return 0


def cmd_export_ilp(args) -> int:
    g, _ = build_graph(args)
    model = build_ilp_naive(g, args.ell) if args.variant == "naive" else build_ilp_cycling(g, args.ell)
    header = f"\\ seed={args.seed} config_hash={config_hash(args)}\n"
    _emit(header + write_lp(model), args)
    return 0


def cmd_randomize(args) -> int:
    g, _ = build_graph(args)
    trials = rewiring_trials(g.n_links, args.epsilon)
    print(f"rewiring trials: {trials}", file=sys.stderr)
    h = degree_preserving_randomize(g, args.epsilon, args.seed)
    header = f"# seed={args.seed} config_hash={config_hash(args)} trials={trials}\n"
    _emit(header + write_edge_list(h), args)
    return 0


def cmd_energy(args) -> int:
    g, weights = build_graph(args)
    if g.n > 60:
        raise UsageError(f"energy comparison is meant for small graphs (n={g.n})")
    if args.m:
        ms = [int(m) for m in args.m]
    else:
        lo = solve_heuristic(g, INF, args.seed).n_inputs
        hi = solve_heuristic(g, 1, args.seed).n_inputs
        ms = list(range(max(lo, 1), hi + 1))
    try:
        rows = energy_mod.energy_comparison(
            g, ms, trials=args.trials, seed=args.seed, weights=weights, t_f=args.t_f, steps=args.steps
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    comments = [f"seed={args.seed} config_hash={config_hash(args)} t_f={args.t_f}"]
    _emit(energy_mod.energy_csv(rows, comments), args)
    return 0


# parser

def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def _add_source(p, weighted=False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", "-i", help="edge-list file ('tail head' per line)")
    src.add_argument("--gen", help="chain:n | cycle:n | star:n | er:n,c | sf:n,c,gamma")
    p.add_argument("--one-based", action="store_true", help="node ids in files and reports start at 1")
    p.add_argument("--allow-self-loops", action="store_true")
    if weighted:
        p.add_argument("--weighted", action="store_true", help="input lines carry a third weight column")


def _add_common(p, ell=True):
    if ell:
        p.add_argument("--ell", type=parse_ell, default=1, help="LCC budget (integer or 'inf')")
    p.add_argument("--seed", type=int, default=_default_seed(), help=f"default from ${SEED_ENV} or 0")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lccontrol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="greedy input set")
    _add_source(p)
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exact minimum input set")
    _add_source(p)
    _add_common(p)
    p.add_argument("--method", choices=("bnb", "bruteforce"), default="bnb")
    p.add_argument("--cap", type=int, default=16, help="largest n accepted")
    p.add_argument("--node-limit", type=int, default=1_000_000)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bounds", help="lower and upper bounds")
    _add_source(p)
    _add_common(p)
    p.add_argument("--exact-ds", action="store_true", help="enumerate the dominating-set term")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check a candidate input set")
    _add_source(p)
    _add_common(p)
    p.add_argument("--inputs", required=True, help="comma-separated node ids")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="ensemble sweep to CSV")
    p.add_argument("--model", choices=("ER", "SF"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=parse_values, required=True, help="'1,2,3' or 'start:stop:step'")
    p.add_argument("--gamma", type=parse_values, default=None)
    p.add_argument("--ell", type=lambda s: [parse_ell(x) for x in s.split(",")], default=[1])
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--workers", type=int, default=0, help="0 means all available cores")
    p.add_argument("--cost", action="store_true", help="also solve with ell=inf for the cost column")
    p.add_argument("--delta", action="store_true", help="also run branch and bound for delta")
    p.add_argument("--node-limit", type=int, default=1_000_000)
    _add_common(p, ell=False)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("export-ilp", help="write an LP file")
    _add_source(p)
    _add_common(p)
    p.add_argument("--variant", choices=("naive", "cycling"), default="naive")
    p.set_defaults(func=cmd_export_ilp)

    p = sub.add_parser("randomize", help="degree-preserving rewiring")
    _add_source(p)
    _add_common(p, ell=False)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("energy", help="control-energy comparison CSV")
    _add_source(p, weighted=True)
    _add_common(p, ell=False)
    p.add_argument("--m", type=lambda s: parse_values(s, int), default=None, help="input counts to test")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--t-f", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(func=cmd_energy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, TooLarge, InvalidSpec, GraphError, ValueError) as exc:
        print(f"lccontrol {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
