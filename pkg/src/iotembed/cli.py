"""Command-line entry point: ``iotembed <command> ...``.

Exit status: 0 success, 1 infeasible or every BP blocked, 2 bad input,
64 bad usage.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .feasibility import EmbeddingOptions, check_solution
from .formats import (RESULT_HEADER, FormatError, csv_text, dump_json, fmt, load_bps, load_network, read_json,
                      save_bps, save_network, series_text, solution_to_dict)
from .heuristics import embed_eluse, embed_rese, embed_rlse
from .instances import BuildingParams, GenerationError, generate_bps, generate_building, mid_size_params
from .model import ZoneMode, validate_instance
from .scenario import (ArrivalSchedule, BatchRecord, Method, MethodConfig, ScenarioResult, Strategy, compare,
                       mean_batches, run)
from .solver import Budget, Objective, OracleTooLarge, brute_force_oracle, solve_exact

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 64


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _k_paths(text: str) -> int | None:
    if text == "all":
        return None
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("k-paths must be >= 1 or 'all'")
    return k


def _embedding_flags(p: argparse.ArgumentParser, methods):
    p.add_argument("--instance", required=True, type=Path)
    p.add_argument("--bps", required=True, type=Path)
    p.add_argument("--method", required=True, choices=methods)
    p.add_argument("--objective", default="energy", choices=["energy", "latency", "weighted"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--coexistence", default="off", choices=["on", "off"])
    p.add_argument("--k-paths", type=_k_paths, default=8, help="candidate paths per demand, or 'all'")
    p.add_argument("--node-limit", type=int, default=2_000_000, help="search nodes per subtree")
    p.add_argument("--time-limit", type=float, help="seconds per subtree (results then depend on timing)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.6, help="RLSE utilisation cap")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True, type=Path)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="iotembed", description="Energy- and latency-aware embedding of BPs into an IoT mesh.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen-instance", help="generate a smart-building network")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--preset", choices=["building", "mid"], default="building")
    g.add_argument("--out", required=True, type=Path)

    b = sub.add_parser("gen-bps", help="generate a BP workload")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--zone-mode", choices=["same", "cross"], default="same")
    b.add_argument("--zones", type=int, default=5)
    b.add_argument("--out", required=True, type=Path)

    s = sub.add_parser("solve", help="embed a workload once")
    _embedding_flags(s, ["exact", "oracle", "rese", "rlse", "eluse"])
    s.add_argument("--allow-blocking", action="store_true", help="exact/oracle may reject BPs")

    sc = sub.add_parser("scenario", help="batched arrivals, sequential or re-provisioning")
    _embedding_flags(sc, ["exact", "rese", "rlse", "eluse"])
    sc.add_argument("--strategy", required=True, choices=["sequential", "reprovision"])
    sc.add_argument("--batch-size", type=int, default=2)
    sc.add_argument("--seeds", type=int, default=1, help="ELUSE: average over this many seeds from --seed")

    r = sub.add_parser("report", help="savings table and plot series against a baseline scenario")
    r.add_argument("--in", dest="inp", required=True, type=Path)
    r.add_argument("--baseline", required=True, type=Path)
    r.add_argument("--out", required=True, type=Path)
    return ap


def _objective(args, net) -> Objective:
    cf = net.coefficients
    return Objective(args.objective,
                     cf.alpha if args.alpha is None else args.alpha,
                     cf.beta if args.beta is None else args.beta,
                     cf.gamma if args.gamma is None else args.gamma)


def _load_inputs(args):
    net = load_network(args.instance)
    bps = load_bps(args.bps)
    problems = validate_instance(net, bps)
    if problems:
        raise InputError("invalid instance:\n  " + "\n  ".join(problems))
    zone_mode = ZoneMode.SAME_ZONE
    for bp in bps:
        zs = {v.zone for v in bp.vnodes if v.role != "controller"}
        if len(zs) > 1:
            zone_mode = ZoneMode.CROSS_ZONE
    return net, bps, EmbeddingOptions(args.coexistence == "on", zone_mode)


def _budget(args) -> Budget:
    return Budget(args.k_paths, args.node_limit, args.time_limit)


def cmd_gen_instance(args) -> int:
    params = BuildingParams() if args.preset == "building" else mid_size_params()
    net = generate_building(args.seed, params)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_network(net, args.out)
    print(f"{len(net.nodes)} nodes, {len(net.links)} links -> {args.out}")
    return EXIT_OK


def cmd_gen_bps(args) -> int:
    bps = generate_bps(args.seed, args.count, args.zone_mode, range(args.zones))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_bps(bps, args.out)
    print(f"{len(bps)} BPs -> {args.out}")
    return EXIT_OK


def cmd_solve(args) -> int:
    net, bps, options = _load_inputs(args)
    objective = _objective(args, net)
    if args.method == "exact":
        sol = solve_exact(net, bps, options, objective, _budget(args), allow_blocking=args.allow_blocking,
                          workers=args.workers)
    elif args.method == "oracle":
        sol = brute_force_oracle(net, bps, options, objective, allow_blocking=args.allow_blocking)
    elif args.method == "rese":
        sol = embed_rese(net, bps, options, objective)
    elif args.method == "rlse":
        sol = embed_rlse(net, bps, options, args.threshold, objective)
    else:
        sol = embed_eluse(net, bps, options, args.seed, objective)
    args.out.mkdir(parents=True, exist_ok=True)
    dump_json(solution_to_dict(sol, objective.kind.value), args.out / "solution.json")
    m = sol.metrics
    row = ["", len(bps), len(sol.embedded), len(sol.blocked), m.tpp, m.tnp, m.power, m.tl, m.avg_latency,
           sol.objective]
    (args.out / "metrics.csv").write_text(csv_text(RESULT_HEADER[1:], [row[1:]]), encoding="utf-8")
    violations = check_solution(net, bps, sol.assignment, sol.routing, options)
    for v in violations:  # should never happen; surfaced rather than hidden
        print(f"violation: {v}", file=sys.stderr)
    print(f"{sol.certificate.value} objective={fmt(sol.objective)} power={fmt(m.power)} mW "
          f"tl={fmt(m.tl)} ms blocked={list(sol.blocked)}")
    if not math.isfinite(sol.objective) or not sol.embedded:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _record_to_dict(r: BatchRecord) -> dict:
    return {"batch": r.batch, "offered": r.offered, "embedded": list(r.embedded), "blocked": list(r.blocked),
            "tpp_mw": r.tpp, "tnp_mw": r.tnp, "tl_ms": r.tl, "avg_latency_ms": r.avg_latency,
            "objective": r.objective if math.isfinite(r.objective) else None, "certificate": r.certificate}


def _record_from_dict(d: dict) -> BatchRecord:
    obj = math.inf if d["objective"] is None else float(d["objective"])
    return BatchRecord(int(d["batch"]), int(d["offered"]), tuple(d["embedded"]), tuple(d["blocked"]),
                       float(d["tpp_mw"]), float(d["tnp_mw"]), float(d["tl_ms"]), float(d["avg_latency_ms"]),
                       obj, str(d["certificate"]))


def cmd_scenario(args) -> int:
    net, bps, options = _load_inputs(args)
    objective = _objective(args, net)
    if args.batch_size < 1 or args.seeds < 1:
        raise InputError("--batch-size and --seeds must be >= 1")
    schedule = ArrivalSchedule.chunked(bps, args.batch_size)
    method = Method(args.method)
    seeds = range(args.seed, args.seed + args.seeds) if method == Method.ELUSE else [args.seed]
    runs = [run(net, schedule, MethodConfig(method, s, args.threshold, _budget(args), args.workers),
                objective, options, args.strategy) for s in seeds]
    rows = []
    for m in mean_batches(runs):
        rows.append([m.batch, m.offered, m.embedded, m.blocked, m.tpp, m.tnp, m.power, m.tl, m.avg_latency,
                     m.objective])
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "results.csv").write_text(csv_text(RESULT_HEADER, rows), encoding="utf-8")
    dump_json({
        "method": method.value, "strategy": args.strategy, "objective": objective.kind.value,
        "coexistence": options.coexistence, "zone_mode": options.zone_mode.value, "seeds": list(seeds),
        "runs": [[_record_to_dict(r) for r in res.batches] for res in runs],
    }, args.out / "scenario.json")
    print(f"{method.value}/{args.strategy}: " + " ".join(f"{fmt(r[2])}/{r[1]}" for r in rows))
    if all(not res.batches[-1].embedded for res in runs):
        return EXIT_INFEASIBLE
    return EXIT_OK


def _load_scenario(path: Path) -> tuple[dict, list[ScenarioResult]]:
    doc = read_json(path / "scenario.json")
    try:
        options = EmbeddingOptions(bool(doc["coexistence"]), ZoneMode(doc["zone_mode"]))
        runs = [ScenarioResult(doc["method"], Strategy(doc["strategy"]), options, Objective(doc["objective"]),
                               tuple(_record_from_dict(r) for r in recs)) for recs in doc["runs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed scenario: {exc!r}") from exc
    return doc, runs


def cmd_report(args) -> int:
    doc, runs = _load_scenario(args.inp)
    bdoc, base = _load_scenario(args.baseline)
    if (doc["coexistence"], doc["zone_mode"]) != (bdoc["coexistence"], bdoc["zone_mode"]):
        raise InputError("scenario and baseline use different embedding options")
    tables = [compare(r, base) for r in runs]
    if len(tables) != 1:
        raise InputError("report expects a single-run scenario in --in; pass seed-averaged runs as --baseline")
    table = tables[0]
    header = ["batch", "offered", "power_mw", "baseline_power_mw", "power_saving_pct", "tl_ms", "baseline_tl_ms",
              "latency_reduction_pct", "avg_latency_ms", "baseline_avg_latency_ms"]
    rows = [[r.batch, r.offered, r.power, r.baseline_power, _pct(r.power_saving), r.tl, r.baseline_tl,
             _pct(r.latency_reduction), r.avg_latency, r.baseline_avg_latency] for r in table.rows]
    rows.append(["mean", "", "", "", _pct(table.mean_power_saving), "", "", _pct(table.mean_latency_reduction),
                 "", ""])
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "savings.csv").write_text(csv_text(header, rows), encoding="utf-8")
    tag, btag = f"{doc['method']}_{doc['strategy']}", f"{bdoc['method']}_{bdoc['strategy']}"
    for name, get in (("power", lambda r: (r.power, r.baseline_power)), ("latency", lambda r: (r.tl, r.baseline_tl))):
        (args.out / f"{name}_{tag}.dat").write_text(
            series_text((r.offered, get(r)[0]) for r in table.rows), encoding="utf-8")
        (args.out / f"{name}_{btag}.dat").write_text(
            series_text((r.offered, get(r)[1]) for r in table.rows), encoding="utf-8")
    print(f"mean power saving {_pct(table.mean_power_saving)}%, "
          f"mean latency reduction {_pct(table.mean_latency_reduction)}%")
    return EXIT_OK


def _pct(x) -> str:
    return "undefined" if x is None else fmt(x)


COMMANDS = {"gen-instance": cmd_gen_instance, "gen-bps": cmd_gen_bps, "solve": cmd_solve,
            "scenario": cmd_scenario, "report": cmd_report}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (FormatError, InputError, GenerationError, OracleTooLarge, OSError, ValueError) as exc:
        print(f"iotembed: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
