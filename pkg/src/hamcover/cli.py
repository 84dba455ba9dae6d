"""Command-line interface: ``hamcover <subcommand> ...``.

Exit codes: 0 success, 1 internal failure, 2 infeasible or not optimal when
that was requested, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cover import (
    CoverCertificate,
    brute_force_min_cover,
    build_split_plan,
    desk_split_plan,
    hitting_time_experiment,
    lower_bound,
    optimal_cover,
    parity_obstruction_check,
    verify_cover,
)
from .errors import CoverFailure, HamcoverError, ParameterError, ParseError
from .factor import FFactorInstance, find_f_factor
from .graph import format_edge_list, generate_gnp, read_graph, write_graph
from .hamilton import SearchBudget, find_hamilton_cycle, hamilton_path_between, pack_hamilton_cycles
from .harness import config_from_mapping, load_config, rows_to_csv, run_experiment, summarize
from .pseudorandom import EXACT, FAIL, SAMPLED, check_pseudorandom

OK, INTERNAL, INFEASIBLE, BAD_INPUT = 0, 1, 2, 3


class _BadInput(Exception):
    pass


def _emit(obj: dict, out: str | None = None) -> None:
    text = json.dumps({"schema": 1, **obj}, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _budget(args) -> SearchBudget:
    return SearchBudget(max_rotations=args.budget, restarts=args.restarts, time_cap=args.time_cap)


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=10_000, help="rotations per restart")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--time-cap", type=int, default=60_000, help="milliseconds")


def _load(path: str):
    try:
        return read_graph(path)
    except OSError as exc:
        raise _BadInput(f"cannot read graph: {exc}") from None


def cmd_generate(args) -> int:
    g = generate_gnp(args.n, args.p, args.seed)
    write_graph(g, args.out or sys.stdout, args.format)
    return OK


def cmd_check(args) -> int:
    g = _load(args.graph)
    reports = check_pseudorandom(g, args.p, args.strength, args.mode, args.samples, args.seed)
    _emit({"graph": args.graph, "reports": [r.to_json() for r in reports]})
    return INFEASIBLE if any(r.verdict == FAIL for r in reports) else OK


def _read_demand(path: str) -> list[int]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().split()
    except OSError as exc:
        raise _BadInput(f"cannot read demand: {exc}") from None
    try:
        return [int(x) for x in lines]
    except ValueError as exc:
        raise ParseError(f"demand must be integers: {exc}") from None


def cmd_factor(args) -> int:
    g = _load(args.graph)
    inst = FFactorInstance(g, _read_demand(args.demand))
    res = find_f_factor(inst, seed=args.seed)
    if res:
        sys.stdout.write(format_edge_list(res.subgraph))
        return OK
    cert = res.certificate.to_json() if res.certificate is not None else None
    _emit({"feasible": False, "reason": res.reason, "certificate": cert})
    return INFEASIBLE


def cmd_hamilton(args) -> int:
    g = _load(args.graph)
    if args.pair:
        x, y = args.pair
        found = hamilton_path_between(g, x, y, _budget(args), args.seed)
        kind = "path"
    else:
        found = find_hamilton_cycle(g, _budget(args), args.seed)
        kind = "cycle"
    if not found:
        _emit({"found": False, "kind": kind, "reason": found.reason, "proven_none": found.proven_none})
        return INFEASIBLE
    _emit({"found": True, "kind": kind, kind: list(found.order)})
    return OK


def cmd_pack(args) -> int:
    g = _load(args.graph)
    target = args.target if args.target is not None else g.min_degree // 2
    cycles = pack_hamilton_cycles(g, target, _budget(args), args.seed)
    _emit({"target": target, "cap": g.min_degree // 2, "cycles": [list(c.order) for c in cycles]})
    return OK if len(cycles) >= min(target, g.min_degree // 2) else INFEASIBLE


def cmd_cover(args) -> int:
    g = _load(args.graph)
    plan = None
    if g.n >= 3 and 0 < g.m < g.n * (g.n - 1) // 2:
        p = g.m / (g.n * (g.n - 1) / 2)
        plan = build_split_plan(g.n, p) if args.paper_densities else desk_split_plan(g.n, p)
    try:
        cert = optimal_cover(g, args.seed, _budget(args), args.strategy, plan)
    except CoverFailure as exc:
        print(f"cover failed ({exc.stage}): {exc}", file=sys.stderr)
        return INFEASIBLE
    _emit(cert.to_json(), args.out)
    print(f"{len(cert.cycles)} cycles, lower bound {cert.bound}, strategy {cert.strategy}", file=sys.stderr)
    return INFEASIBLE if args.require_optimal and not cert.optimal else OK


def _read_cert(path: str, g) -> CoverCertificate:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise _BadInput(f"cannot read certificate: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid certificate JSON: {exc.msg}", exc.lineno) from None
    return CoverCertificate.from_json(obj, g)


def cmd_verify(args) -> int:
    g = _load(args.graph)
    cert = _read_cert(args.cert, g)
    check = verify_cover(g, cert)
    out = {"ok": check.ok, "violation": check.violation, "detail": check.detail,
           "cycles": len(cert.cycles), "lower_bound": lower_bound(g), "optimal": check.ok and cert.optimal}
    if check.ok:
        rep = parity_obstruction_check(g, cert)
        out["multiplicity_profile"] = {str(k): v for k, v in rep.multiplicity_profile.items()}
    _emit(out)
    return OK if check.ok else INFEASIBLE


def cmd_oracle(args) -> int:
    g = _load(args.graph)
    if g.n > args.max_n:
        raise ParameterError(f"brute force is limited to n <= {args.max_n}; got n={g.n}")
    best = brute_force_min_cover(g, args.cap)
    _emit({"min_cover": best, "lower_bound": lower_bound(g)})
    return OK if best is not None else INFEASIBLE


def _overrides(args) -> dict[str, str]:
    keys = ("grid", "mode", "family", "seeds", "seed_list", "master_seed", "strategy", "time_cap",
            "max_rotations", "workers", "csv", "json", "summary")
    out = {k: str(getattr(args, k)) for k in keys if getattr(args, k) is not None}
    if args.paper_densities:
        out["desk_scale"] = "false"
    return out


def cmd_experiment(args) -> int:
    overrides = _overrides(args)
    if args.config:
        try:
            config = load_config(args.config, overrides)
        except OSError as exc:
            raise _BadInput(f"cannot read config: {exc}") from None
    else:
        config = config_from_mapping(overrides)
    rows = run_experiment(config)
    if not config.csv_path:
        sys.stdout.write(rows_to_csv(rows))
    if not config.summary_path:
        sys.stderr.write(summarize(rows).to_text())
    return OK


def cmd_hitting_time(args) -> int:
    results = []
    for seed in range(args.seed, args.seed + args.runs):
        r = hitting_time_experiment(args.n, seed, _budget(args))
        results.append({"seed": seed, "t_hamiltonian": r.t_hamiltonian, "t_cover_estimate": r.t_cover_estimate})
    _emit({"n": args.n, "runs": results, "note": "t_cover_estimate is a heuristic upper estimate"})
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamcover", description="Hamilton cycle covers of graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="run the pseudorandom property battery")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--strength", choices=("normal", "strong"), default="normal")
    p.add_argument("--mode", choices=(EXACT, SAMPLED), default=SAMPLED)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("factor", help="find an f-factor or a Tutte certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--demand", required=True, help="file with one integer per vertex")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("hamilton", help="find a Hamilton cycle or an x-y Hamilton path")
    p.add_argument("--graph", required=True)
    p.add_argument("--pair", type=int, nargs=2, metavar=("X", "Y"))
    p.add_argument("--seed", type=int, default=0)
    _add_budget(p)
    p.set_defaults(func=cmd_hamilton)

    p = sub.add_parser("pack", help="pack edge-disjoint Hamilton cycles")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", type=int)
    p.add_argument("--seed", type=int, default=0)
    _add_budget(p)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("cover", help="cover all edges with Hamilton cycles")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", type=int, default=0)
    dens = p.add_mutually_exclusive_group()
    dens.add_argument("--desk-scale", action="store_true", default=True)
    dens.add_argument("--paper-densities", action="store_true", help="literal asymptotic layer densities")
    p.add_argument("--strategy", choices=("auto", "structured", "greedy"), default="auto")
    p.add_argument("--require-optimal", action="store_true", help="exit 2 unless ⌈Δ/2⌉ cycles")
    p.add_argument("--out")
    _add_budget(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="check a cover certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact minimum cover size by brute force")
    p.add_argument("--graph", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", help="run an experiment grid")
    p.add_argument("--config")
    p.add_argument("--grid", help='"64:0.3,128:0.5" or "64,128 x 0.3,0.5"')
    p.add_argument("--mode", choices=("cover", "pack", "survey", "hitting-time"))
    p.add_argument("--family", choices=("gnp", "cycle", "complete"))
    p.add_argument("--seeds", type=int)
    p.add_argument("--seed-list")
    p.add_argument("--master-seed", type=int)
    p.add_argument("--strategy", choices=("auto", "structured", "greedy"))
    p.add_argument("--paper-densities", action="store_true")
    p.add_argument("--time-cap", type=int)
    p.add_argument("--max-rotations", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--summary")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("hitting-time", help="Hamiltonicity and cover hitting times of the random graph process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    _add_budget(p)
    p.set_defaults(func=cmd_hitting_time)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (_BadInput, ParseError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except HamcoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INTERNAL
    except Exception as exc:  # noqa: BLE001 - report, then signal an internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
