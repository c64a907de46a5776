"""Command-line entry point: enumeration, catalogs, named constructions,
arrowing, star-critical computation, coloring verification, and Ramsey
certification, with JSON/graph6 outputs and a run manifest.

Exit codes: 0 verified or decided as expected, 1 refutation or mismatch,
2 budget exhausted, 64 usage error.  All searches are deterministic, so a
rerun with the same arguments reproduces byte-identical output files; the
manifest records their hashes plus timings.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .arrows import (
    BRUTE_FORCE_EDGE_CAP,
    Certificate,
    RamseyInstance,
    brute_force_arrows,
    star_critical,
    star_host_arrows,
)
from .canon import IsoCatalog
from .constructions import (
    Coloring,
    c4_star_witness,
    critical_catalog,
    lower_bound_coloring,
    unique_c4_critical,
    verify_coloring,
)
from .detect import ramsey_number
from .generate import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIME_BUDGET,
    EnumSpec,
    enumerate_cycle_free,
    verify_ramsey_number,
)
from .graphs import graph6_encode, host_complete, host_minus_star

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64

DEEP_NODE_BUDGET = 10**10
DEEP_TIME_BUDGET = 12 * 3600.0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    return data.get("starcrit", data)


def _settings(args) -> dict:
    """workers and budgets: defaults, then config file, then environment,
    then explicit flags."""
    cfg = _load_config(getattr(args, "config", None))
    out = {
        "workers": int(cfg.get("workers", 1)),
        "node_budget": int(cfg.get("node_budget", DEFAULT_NODE_BUDGET)),
        "time_budget": float(cfg.get("time_budget", DEFAULT_TIME_BUDGET)),
    }
    if os.environ.get("STARCRIT_WORKERS"):
        out["workers"] = int(os.environ["STARCRIT_WORKERS"])
    if os.environ.get("STARCRIT_NODE_BUDGET"):
        out["node_budget"] = int(os.environ["STARCRIT_NODE_BUDGET"])
    if os.environ.get("STARCRIT_TIME_BUDGET"):
        out["time_budget"] = float(os.environ["STARCRIT_TIME_BUDGET"])
    if getattr(args, "workers", None) is not None:
        out["workers"] = args.workers
    if getattr(args, "node_budget", None) is not None:
        out["node_budget"] = args.node_budget
    if getattr(args, "time_budget", None) is not None:
        out["time_budget"] = args.time_budget
    if getattr(args, "profile", "fast") == "deep":
        out["node_budget"] = max(out["node_budget"], DEEP_NODE_BUDGET)
        out["time_budget"] = max(out["time_budget"], DEEP_TIME_BUDGET)
    return out


class _Run:
    """Collects output files and writes the manifest at the end."""

    def __init__(self, args, settings: dict):
        self.out = Path(args.out) if getattr(args, "out", None) else None
        self.command = args.command
        self.argv = sys.argv[1:]
        self.settings = settings
        self.started = time.monotonic()
        self.files: dict[str, str] = {}
        self.results: dict = {}
        self.assumptions: list[str] = []

    def write_text(self, name: str, text: str) -> None:
        if self.out is None:
            return
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        path.write_text(text)
        self.files[name] = hashlib.sha256(text.encode()).hexdigest()

    def write_json(self, name: str, payload: dict) -> None:
        self.write_text(name, json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def save_catalog(self, name: str, catalog: IsoCatalog) -> None:
        if self.out is None:
            return
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        catalog.save(path)
        for p in (path, path.with_suffix(path.suffix + ".json")):
            self.files[p.name] = hashlib.sha256(p.read_bytes()).hexdigest()

    def finish(self) -> None:
        if self.out is None:
            return
        manifest = {
            "tool": "starcrit",
            "version": __version__,
            "command": self.command,
            "argv": self.argv,
            "settings": self.settings,
            "seeds": None,  # all searches are deterministic
            "wall_time": round(time.monotonic() - self.started, 3),
            "outputs": dict(sorted(self.files.items())),
            "results": self.results,
            "assumptions": sorted(set(self.assumptions)),
        }
        path = self.out / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _emit_certificate(run: _Run, name: str, cert: Certificate) -> None:
    run.assumptions.extend(cert.assumptions)
    run.write_json(name, cert.to_json())


def _cmd_enumerate(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    spec = EnumSpec(
        args.order,
        args.forbid_cycle,
        args.alpha_max,
        node_budget=settings["node_budget"],
        time_budget=settings["time_budget"],
    )
    catalog, record = enumerate_cycle_free(spec, workers=settings["workers"])
    print(len(catalog))
    run.results = {"classes": len(catalog), "record": record.to_dict()}
    run.save_catalog("catalog.g6", catalog)
    run.write_json("record.json", record.to_dict())
    run.finish()
    if not record.completed:
        print("search budget exhausted; catalog incomplete", file=sys.stderr)
        return EXIT_BUDGET
    if args.expect is not None and len(catalog) != args.expect:
        print(f"expected {args.expect} classes, found {len(catalog)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_catalog(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    catalog = critical_catalog(args.n)
    print(len(catalog))
    run.results = {"classes": len(catalog), "n": args.n}
    run.assumptions.extend(catalog.assumptions())
    run.save_catalog(f"critical-{args.n}.g6", catalog)
    run.finish()
    if args.expect is not None and len(catalog) != args.expect:
        print(f"expected {args.expect} classes, found {len(catalog)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_construct(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    name = args.construction
    if name == "figure13":
        g = unique_c4_critical(workers=settings["workers"])
        print(graph6_encode(g))
        run.results = {"construction": name, "graph6": graph6_encode(g)}
        run.write_text("figure13.g6", graph6_encode(g) + "\n")
        run.finish()
        return EXIT_OK
    if name == "figure14":
        coloring = c4_star_witness(workers=settings["workers"])
        good = verify_coloring(coloring, 4, 5)
        n_param, k_param = 4, 5
    elif name == "figure15":
        if args.n is None:
            print("construct figure15 requires --n", file=sys.stderr)
            return EXIT_USAGE
        try:
            coloring = lower_bound_coloring(args.n, host_kind=args.host)
        except ValueError as exc:
            print(f"not constructible: {exc}", file=sys.stderr)
            return EXIT_MISMATCH
        good = verify_coloring(coloring, args.n, 5)
        n_param, k_param = args.n, 5
    else:
        print(f"unknown construction {name}", file=sys.stderr)
        return EXIT_USAGE
    payload = {
        "construction": name,
        "coloring": coloring.to_json(),
        "good": good,
        "cycle": n_param,
        "clique": k_param,
    }
    print(f"{name}: {'good coloring' if good else 'NOT a good coloring'}")
    run.results = payload
    run.write_json(f"{name}.json", payload)
    run.finish()
    return EXIT_OK if good else EXIT_MISMATCH


def _build_catalog_for(n: int, workers: int) -> IsoCatalog:
    if n == 4:
        catalog, record = enumerate_cycle_free(EnumSpec(13, 4, 4), workers=workers)
        if not record.completed:
            raise RuntimeError("order-13 derivation exhausted its budget")
        return catalog
    return critical_catalog(n)


def _cmd_arrow(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    n, k = args.cycle, args.clique
    if args.host == "complete":
        host = host_complete(args.order)
        if host.universe.edge_count() > BRUTE_FORCE_EDGE_CAP:
            print(
                f"complete host of order {args.order} exceeds the brute-force cap",
                file=sys.stderr,
            )
            return EXIT_USAGE
        cert = brute_force_arrows(host, n, k)
    else:
        if args.star_k is None:
            print("arrow --host minus-star requires --star-k", file=sys.stderr)
            return EXIT_USAGE
        host = host_minus_star(args.order, args.order - 1 - args.star_k)
        if host.universe.edge_count() <= BRUTE_FORCE_EDGE_CAP:
            cert = brute_force_arrows(host, n, k)
        elif k == 5 and n >= 4 and args.order == ramsey_number(n, 5):
            inst = RamseyInstance.cycle_vs_k5(n)
            catalog = _build_catalog_for(n, settings["workers"])
            cert = star_host_arrows(catalog, inst, args.star_k)
        else:
            print(
                "host too large for brute force and no critical catalog applies",
                file=sys.stderr,
            )
            return EXIT_USAGE
    print(cert.verdict)
    run.results = {"verdict": cert.verdict}
    _emit_certificate(run, "certificate.json", cert)
    run.finish()
    return EXIT_OK


def _cmd_star_critical(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    n = args.n
    inst = RamseyInstance.cycle_vs_k5(n)
    catalog = _build_catalog_for(n, settings["workers"])
    certs: list[Certificate] = []
    value = star_critical(catalog, inst, 0, inst.r - 1, certificates=certs)
    print(value)
    run.results = {"n": n, "star_critical": value}
    for cert in certs:
        _emit_certificate(run, f"arrow-k{cert.instance['k_star']}.json", cert)
    run.finish()
    if args.expect is not None and value != args.expect:
        print(f"expected {args.expect}, computed {value}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_verify(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    data = json.loads(Path(args.coloring).read_text())
    if "coloring" in data:
        data = data["coloring"]
    coloring = Coloring.from_json(data)
    good = verify_coloring(coloring, args.cycle, args.clique)
    print("good coloring" if good else "NOT a good coloring")
    run.results = {"good": good}
    run.finish()
    return EXIT_OK if good else EXIT_MISMATCH


def _cmd_ramsey(args) -> int:
    settings = _settings(args)
    run = _Run(args, settings)
    cert = verify_ramsey_number(
        args.cycle,
        args.clique,
        args.claim,
        node_budget=settings["node_budget"],
        time_budget=settings["time_budget"],
        workers=settings["workers"],
    )
    print(cert.verdict)
    run.results = cert.to_dict()
    run.write_json("ramsey.json", cert.to_dict())
    run.finish()
    if cert.verdict == "certified":
        return EXIT_OK
    if cert.verdict == "refuted":
        return EXIT_MISMATCH
    return EXIT_BUDGET


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="directory for catalogs, certificates, manifest")
    p.add_argument("--config", help="TOML config file with a [starcrit] table")
    p.add_argument("--workers", type=int, help="worker processes (default 1)")
    p.add_argument("--node-budget", type=int, help="search node budget")
    p.add_argument("--time-budget", type=float, help="search time budget, seconds")
    p.add_argument(
        "--profile",
        choices=["fast", "deep"],
        default="fast",
        help="deep raises budgets for the long exhaustive confirmations",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="starcrit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"starcrit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="isomorph-free cycle-free enumeration")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--forbid-cycle", type=int, required=True)
    p.add_argument("--alpha-max", type=int, required=True)
    p.add_argument("--expect", type=int, help="fail unless the class count matches")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("catalog", help="critical catalog at order 4(n-1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expect", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("construct", help="named lower-bound constructions")
    p.add_argument("construction", choices=["figure13", "figure14", "figure15"])
    p.add_argument("--n", type=int)
    p.add_argument("--host", choices=["star", "clique"], default="star")
    _add_common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("arrow", help="decide host -> (C_n, K_k)")
    p.add_argument("--host", choices=["complete", "minus-star"], required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--star-k", type=int)
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--clique", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_arrow)

    p = sub.add_parser("star-critical", help="exact star-critical Ramsey value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expect", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_star_critical)

    p = sub.add_parser("verify", help="check a stored coloring")
    p.add_argument("--coloring", required=True)
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--clique", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("ramsey", help="certify r(C_m, K_k) by double enumeration")
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--clique", type=int, required=True)
    p.add_argument("--claim", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_ramsey)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
