"""Command-line front end.

Exit codes: 0 success or Exists, 2 usage/config/size error, 3 NotExists,
4 round bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .complex_core import components, standard_simplex
from .errors import BoundExceeded, TopoPoolsError
from .export import complex_from_dict, complex_to_dict, dumps, to_dot
from .ksa import DEFAULT_M_BOUND, EXPLICIT_REDUCTION_CAP, build_2sa_to_2dp, build_kdp_to_ksa
from .pool_tasks import (
    DEFAULT_MINER_CAP,
    PoolConfig,
    assignment_dict,
    full_simplex_round,
    gen_input,
    gen_output,
    no_stay_ok,
    partition_input,
    rotation_map,
    swap_m,
    task_carrier,
)
from .solvability import brute_force_equilibria, certify_connected_image, equilibrium_verdict, target_facet
from .subdivision import DEFAULT_FACET_CAP, KINDS, iterate_div
from .topo_maps import check_monotonic, is_simplicial

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_EXISTS = 3
EXIT_BOUND = 4

COMMANDS = ("gen", "verdict", "brute-force", "subdivide", "reduce", "swap", "check")


class UsageError(TopoPoolsError):
    pass


@dataclass
class RunConfig:
    command: str
    sizes: Optional[PoolConfig] = None
    m: int = 1
    kind: str = "chromatic"
    facet_cap: int = DEFAULT_FACET_CAP
    miner_cap: int = DEFAULT_MINER_CAP
    m_bound: int = DEFAULT_M_BOUND
    output_path: Optional[Path] = None
    format: str = "json"
    simplex: Optional[int] = None
    complex_path: Optional[Path] = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        for cap in ("facet_cap", "miner_cap", "m_bound"):
            if getattr(ns, cap) < 1:
                raise UsageError(f"--{cap.replace('_', '-')} must be positive")
        if ns.m < 0:
            raise UsageError("--m must be >= 0")
        sizes = None
        if ns.sizes is not None:
            sizes = PoolConfig.parse(ns.sizes)
        elif ns.config is not None:
            sizes = PoolConfig.from_json(Path(ns.config).read_text())
        if ns.command != "subdivide" and sizes is None:
            raise UsageError(f"{ns.command} needs --sizes or --config")
        if ns.command == "subdivide" and ns.simplex is None and ns.complex is None:
            raise UsageError("subdivide needs --simplex N or --complex FILE")
        return cls(
            command=ns.command, sizes=sizes, m=ns.m, kind=ns.kind, facet_cap=ns.facet_cap,
            miner_cap=ns.miner_cap, m_bound=ns.m_bound,
            output_path=None if ns.out is None else Path(ns.out), format=ns.format,
            simplex=ns.simplex, complex_path=None if ns.complex is None else Path(ns.complex),
        )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topo-pools", description="Mining-pool equilibria via combinatorial topology.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--sizes", help="comma-separated pool sizes, e.g. 3,2,2")
    p.add_argument("--config", help='JSON file of the form {"sizes": [...]}')
    p.add_argument("--m", type=int, default=1, help="subdivision or swap rounds")
    p.add_argument("--kind", choices=KINDS, default="chromatic")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--out", help="output file, or file stem for gen")
    p.add_argument("--miner-cap", type=int, default=DEFAULT_MINER_CAP)
    p.add_argument("--facet-cap", type=int, default=DEFAULT_FACET_CAP)
    p.add_argument("--m-bound", type=int, default=DEFAULT_M_BOUND)
    p.add_argument("--simplex", type=int, help="subdivide the standard n-simplex")
    p.add_argument("--complex", help="subdivide a complex read from JSON")
    return p


def _render(c, fmt: str, name: str) -> str:
    if fmt == "dot":
        return to_dot(c, name)
    if fmt == "text":
        return "".join(" ".join(row) + "\n" for row in complex_to_dict(c)["facets"])
    return dumps(complex_to_dict(c))


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _suffix(fmt: str) -> str:
    return {"json": ".json", "dot": ".dot", "text": ".txt"}[fmt]


def cmd_gen(rc: RunConfig) -> int:
    cfg = rc.sizes
    inp = gen_input(cfg)
    out = gen_output(cfg, rc.miner_cap)
    if out.facet_count > rc.facet_cap:
        raise UsageError(f"output complex has {out.facet_count} facets (cap {rc.facet_cap})")
    stem = rc.output_path or Path("pools-" + "-".join(map(str, cfg.sizes)))
    written = []
    for part, c in (("input", inp), ("output", out)):
        path = stem.with_name(f"{stem.name}.{part}{_suffix(rc.format)}")
        path.write_text(_render(c, rc.format, part), encoding="utf-8")
        written.append(str(path))
    print(f"input: {len(inp.facets)} facets, dim {inp.dim}; output: {out.facet_count} facets, dim {out.dim}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_verdict(rc: RunConfig) -> int:
    v = equilibrium_verdict(rc.sizes, miner_cap=rc.miner_cap, facet_cap=rc.facet_cap, m_bound=rc.m_bound)
    _emit(dumps(v.to_dict()), rc.output_path)
    return EXIT_OK if v.exists else EXIT_NOT_EXISTS


def cmd_brute_force(rc: RunConfig) -> int:
    maps = brute_force_equilibria(rc.sizes, rc.miner_cap)
    facets = [assignment_dict(target_facet(m)) for m in maps]
    _emit(dumps({"sizes": list(rc.sizes.sizes), "count": len(maps), "equilibria": facets}), rc.output_path)
    return EXIT_OK


def cmd_subdivide(rc: RunConfig) -> int:
    if rc.complex_path is not None:
        base = complex_from_dict(json.loads(rc.complex_path.read_text()))
    else:
        base = standard_simplex(rc.simplex)
    sub = iterate_div(base, rc.m, rc.kind, rc.facet_cap)
    if rc.output_path is not None:
        _emit(_render(sub, rc.format, f"{rc.kind}{rc.m}"), rc.output_path)
    print(f"facets: {len(sub.facets)}")
    return EXIT_OK


def cmd_reduce(rc: RunConfig) -> int:
    k = partition_input(rc.sizes).k
    if k == 1:
        raise UsageError("k=1: no reduction applies")
    if k == 2:
        red = build_2sa_to_2dp(rc.sizes, m_bound=rc.m_bound, facet_cap=min(rc.facet_cap, EXPLICIT_REDUCTION_CAP),
                               allow_symbolic=True)
    else:
        red = build_kdp_to_ksa(rc.sizes, facet_cap=rc.facet_cap)
    _emit(dumps(red.report.to_dict()), rc.output_path)
    return EXIT_OK if red.report.verified else 1


def cmd_swap(rc: RunConfig) -> int:
    c = swap_m(rc.sizes, rc.m)
    if rc.output_path is not None:
        _emit(_render(c, rc.format, f"swap{rc.m}"), rc.output_path)
    full = full_simplex_round(rc.sizes, rc.m_bound)
    print(f"swap^{rc.m}: {len(c.facets)} facets, dim {c.dim}; first full round M = {full}")
    return EXIT_OK


def run_checks(rc: RunConfig) -> dict:
    """Invariant suite for one configuration; every value is a boolean."""
    cfg = rc.sizes
    inp = gen_input(cfg)
    checks = {
        "input_components_equal_pools": len(components(inp)) == cfg.q,
        "input_dim": inp.dim == max(cfg.sizes) - 1,
    }
    verdict = equilibrium_verdict(cfg, miner_cap=rc.miner_cap, facet_cap=rc.facet_cap, m_bound=rc.m_bound)
    checks["verdict_matches_k"] = verdict.exists == (verdict.k <= 2)
    if cfg.total <= min(rc.miner_cap, 8):
        out = gen_output(cfg, rc.miner_cap)
        checks["output_dim"] = out.dim == cfg.total - 1
        checks["carrier_monotonic"] = check_monotonic(task_carrier(cfg, rc.miner_cap), cfg.total).ok
        maps = brute_force_equilibria(cfg, rc.miner_cap)
        checks["brute_force_agrees"] = bool(maps) == verdict.exists or verdict.k >= 3
        checks["brute_force_maps_valid"] = all(
            is_simplicial(m).ok and no_stay_ok(target_facet(m)) and certify_connected_image(m).ok for m in maps
        )
    if cfg.is_equal:
        rot = rotation_map(cfg)
        checks["rotation_simplicial"] = is_simplicial(rot).ok
        checks["rotation_connected"] = certify_connected_image(rot).ok
    if verdict.k >= 2:
        red = (build_2sa_to_2dp(cfg, m_bound=rc.m_bound, facet_cap=min(rc.facet_cap, EXPLICIT_REDUCTION_CAP),
                                allow_symbolic=True)
               if verdict.k == 2 else build_kdp_to_ksa(cfg, facet_cap=rc.facet_cap))
        checks["reduction_verified"] = red.report.verified
    return checks


def cmd_check(rc: RunConfig) -> int:
    checks = run_checks(rc)
    if rc.format == "json":
        _emit(dumps({"sizes": list(rc.sizes.sizes), "checks": checks}), rc.output_path)
    else:
        _emit("".join(f"{'PASS' if ok else 'FAIL'} {name}\n" for name, ok in checks.items()), rc.output_path)
    return EXIT_OK if all(checks.values()) else 1


HANDLERS = {
    "gen": cmd_gen,
    "verdict": cmd_verdict,
    "brute-force": cmd_brute_force,
    "subdivide": cmd_subdivide,
    "reduce": cmd_reduce,
    "swap": cmd_swap,
    "check": cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rc = RunConfig.from_args(ns)
        return HANDLERS[rc.command](rc)
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (TopoPoolsError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
