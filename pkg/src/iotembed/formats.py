"""JSON instance, workload and solution files; CSV result tables.

Instance and workload files keep full float precision so they load back to
equal values. Result files (solutions, CSV tables) print numbers with six
significant digits so they are stable across platforms.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

from .metrics import evaluate
from .model import (ANY, BusinessProcess, Coefficients, IoTNode, PhysicalNetwork, VirtualLink, VirtualNode,
                    WirelessLink)
from .routing import RoutingPlan, plan_from_paths
from .solver import Solution

RESULT_HEADER = ["batch", "offered", "embedded", "blocked", "tpp_mw", "tnp_mw", "total_mw", "tl_ms",
                 "avg_latency_ms", "objective"]


class FormatError(ValueError):
    """A file does not follow the expected layout."""


def fmt(x) -> str:
    """Six significant digits; integers stay integers."""
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6g}"


def num6(x: float) -> float | None:
    """Round for JSON result files; non-finite values become null."""
    return float(f"{x:.6g}") if math.isfinite(x) else None


def dump_json(obj, path: Path | str | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def read_json(path: Path | str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


_COEF_KEYS = {
    "e_pbt_mw_per_kbps": "e_pbt", "f_tr_mw_per_kbps_m2": "f_tr", "idle_net_mw": "idle_net",
    "capacity_kbps": "capacity", "packet_kb": "packet_kb", "table_step_kbps": "table_step",
    "alpha": "alpha", "beta": "beta", "gamma": "gamma",
}


# -- instances ----------------------------------------------------------------

def network_to_dict(net: PhysicalNetwork) -> dict:
    cf = net.coefficients
    meta = dict(net.meta)
    meta.setdefault("area_m", list(net.area))
    meta.setdefault("achieved_links", len(net.links))
    return {
        "meta": {"seed": meta.get("seed"), "area_m": list(meta["area_m"]), "achieved_links": meta["achieved_links"]},
        "coefficients": {k: getattr(cf, attr) for k, attr in _COEF_KEYS.items()},
        "zones": list(net.zones),
        "functions": list(net.functions),
        "nodes": [{"id": n.id, "zone": n.zone, "x_m": n.x, "y_m": n.y, "mcu_mhz": n.mcu_mhz, "ram_kb": n.ram_kb,
                   "idle_cpu_mw": n.idle_cpu_mw, "max_cpu_mw": n.max_cpu_mw, "functions": sorted(n.functions),
                   "mcu_type": n.mcu_type} for n in net.nodes],
        "links": [{"a": ln.a, "b": ln.b, "dist_m": ln.dist_m} for ln in net.links],
    }


def network_from_dict(d: dict) -> PhysicalNetwork:
    try:
        cf = Coefficients(**{attr: float(d["coefficients"][k]) for k, attr in _COEF_KEYS.items()})
        area = tuple(float(v) for v in d["meta"]["area_m"])
        nodes = tuple(IoTNode(int(n["id"]), int(n["zone"]), float(n["x_m"]), float(n["y_m"]), float(n["mcu_mhz"]),
                              float(n["ram_kb"]), float(n["idle_cpu_mw"]), float(n["max_cpu_mw"]),
                              frozenset(int(f) for f in n["functions"]), cf.idle_net, cf.capacity,
                              str(n.get("mcu_type", ""))) for n in d["nodes"])
        links = tuple(WirelessLink(int(ln["a"]), int(ln["b"]), float(ln["dist_m"]), cf.e_pbt, cf.f_tr)
                      for ln in d["links"])
        return PhysicalNetwork(nodes, links, tuple(int(z) for z in d["zones"]),
                               tuple(int(f) for f in d["functions"]), area, cf, dict(d["meta"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed instance: {exc!r}") from exc


def save_network(net: PhysicalNetwork, path) -> str:
    return dump_json(network_to_dict(net), path)


def load_network(path) -> PhysicalNetwork:
    return network_from_dict(read_json(path))


# -- workloads ----------------------------------------------------------------

def bps_to_dict(bps: Sequence[BusinessProcess]) -> dict:
    return {"bps": [{
        "id": bp.id,
        "vnodes": [{"id": v.id, "role": v.role, "function": v.function, "zone": v.zone,
                    "mcu_mhz": v.mcu_mhz, "ram_kb": v.ram_kb} for v in bp.vnodes],
        "vlinks": [{"a": vl.a, "b": vl.b, "kbps": vl.kbps} for vl in bp.vlinks],
    } for bp in bps]}


def bps_from_dict(d: dict) -> list[BusinessProcess]:
    try:
        out = []
        for b in d["bps"]:
            vnodes = tuple(VirtualNode(int(v["id"]), int(v["function"]),
                                       ANY if v["zone"] == ANY else int(v["zone"]),
                                       float(v["mcu_mhz"]), float(v.get("ram_kb", 0.0)), str(v.get("role", "")))
                           for v in b["vnodes"])
            vlinks = tuple(VirtualLink(int(x["a"]), int(x["b"]), float(x["kbps"])) for x in b["vlinks"])
            out.append(BusinessProcess(int(b["id"]), vnodes, vlinks))
        return out
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed BP file: {exc!r}") from exc


def save_bps(bps, path) -> str:
    return dump_json(bps_to_dict(bps), path)


def load_bps(path) -> list[BusinessProcess]:
    return bps_from_dict(read_json(path))


# -- solutions ----------------------------------------------------------------

def solution_to_dict(sol: Solution, objective_name: str = "") -> dict:
    m = sol.metrics
    return {
        "assignment": [{"bp": bp, "vnode": v, "node": c} for (bp, v), c in sorted(sol.assignment.items())],
        "routes": [{"bp": bp, "vlink": k, "path": list(p)} for (bp, k), p in sorted(sol.routing.paths.items())],
        "metrics": {"tpp_mw": num6(m.tpp), "tnp_mw": num6(m.tnp), "tl_ms": num6(m.tl),
                    "avg_latency_ms": num6(m.avg_latency), "blocked": list(sol.blocked)},
        "objective": {"kind": objective_name, "value": num6(sol.objective)},
        "certificate": sol.certificate.value,
    }


def read_solution(d: dict) -> tuple[dict, dict, tuple[int, ...]]:
    """(assignment, paths, blocked) from a solution document."""
    try:
        assignment = {(int(a["bp"]), int(a["vnode"])): int(a["node"]) for a in d["assignment"]}
        paths = {(int(r["bp"]), int(r["vlink"])): tuple(int(x) for x in r["path"]) for r in d["routes"]}
        blocked = tuple(int(b) for b in d["metrics"]["blocked"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed solution: {exc!r}") from exc
    return assignment, paths, blocked


def reevaluate(net: PhysicalNetwork, bps: Iterable[BusinessProcess], doc: dict):
    """Rebuild the routing plan from a solution document and evaluate it."""
    assignment, paths, _ = read_solution(doc)
    active = [b for b in bps if any((b.id, v.id) in assignment for v in b.vnodes)]
    plan: RoutingPlan = plan_from_paths(active, assignment, paths)
    return assignment, plan, evaluate(net, active, assignment, plan)


# -- result tables --------------------------------------------------------------

def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) if not isinstance(x, str) else x for x in row])
    return buf.getvalue()


def series_text(points: Iterable[tuple[float, float]]) -> str:
    return "".join(f"{fmt(x)} {fmt(y)}\n" for x, y in points)


__all__ = ["FormatError", "RESULT_HEADER", "fmt", "num6", "save_network", "load_network", "network_to_dict",
           "network_from_dict", "save_bps", "load_bps", "bps_to_dict", "bps_from_dict", "solution_to_dict",
           "read_solution", "reevaluate", "csv_text", "series_text", "dump_json", "read_json"]
