"""Command-line front end: generation, widths, containment, packing/covering runs."""

import argparse
import csv
import io
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from .containment import (
    EnumerationBudgetError,
    Relation,
    SearchLimits,
    SizeCapError,
    contains,
    enumerate_minimal_hosts,
    parse_relation,
    verify_model,
)
from .dgr import DgrFormatError, format_dgr, load_digraph, save_digraph
from .digraph import (
    Digraph,
    directed_cycle,
    disjoint_union,
    random_s_semicomplete,
    random_tournament,
    transitive_tournament,
)
from .duality import EpReport, ep_verify, max_packing, min_cover
from .ensembles import all_tournaments, derive_seed, tournaments_up_to_iso
from .widths import Layout, cutwidth, directed_pathwidth

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BUDGET = 2
EXIT_MALFORMED = 3

CSV_COLUMNS = [
    "instance_id", "relation", "mode", "n", "arcs", "nu", "tau", "k",
    "constructive_size", "bound_rhs", "bounds_ok", "pw", "ctw", "seed",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """Echoable description of one epcheck run."""

    pattern: str
    relation: str
    mode: str
    ensemble: str  # "exhaustive" | "random"
    k_max: int
    max_n: int | None = None
    n: int | None = None
    s: int | None = None
    count: int | None = None
    multi: int | None = None
    seed: int | None = None
    up_to_iso: bool = False
    deterministic: bool = False
    jobs: int = 1
    time_per_instance: float | None = None

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be positive")
        if self.ensemble == "random" and (self.count is None or self.count < 1):
            raise ValueError("random ensembles need a positive --count")
        if self.ensemble == "exhaustive" and (self.max_n is None or self.max_n < 1):
            raise ValueError("exhaustive ensembles need a positive --max-n")
        if self.time_per_instance is not None and self.time_per_instance <= 0:
            raise ValueError("--time-per-instance must be positive")


@dataclass
class RunArtifact:
    """Full record of an epcheck run; the JSON file is its serialization."""

    config: ExperimentConfig
    reports: list
    generated_at: str = ""
    elapsed_seconds: float = 0.0
    thresholds: dict | None = None

    @property
    def violations(self) -> int:
        return sum(0 if rd["bounds_ok"] else 1 for rd in self.reports)

    def to_json_dict(self) -> dict:
        ratios = [
            rd["constructive_size"] / rd["bound_rhs"]
            for rd in self.reports
            if rd["bound_rhs"] > 0 and rd["checks"] and rd["checks"][-1]["branch"] == "cover"
        ]
        return {
            "config": asdict(self.config),
            "generated_at": self.generated_at,
            "elapsed_seconds": self.elapsed_seconds,
            "reports": self.reports,
            "thresholds": self.thresholds,
            "summary": {
                "instances": len(self.reports),
                "violations": self.violations,
                "max_cover_ratio": max(ratios) if ratios else None,
            },
        }


def save_report(artifact: RunArtifact, path) -> None:
    """Write a run artifact as JSON (the source of truth for a run)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(artifact.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def builtin_pattern(name: str) -> Digraph:
    """Named pattern builders: C3, Cn, TTn, kC3, two-cycle."""
    name = name.strip()
    if name.lower() in ("two-cycle", "2-cycle"):
        return directed_cycle(2)
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        return directed_cycle(int(m.group(1)))
    m = re.fullmatch(r"TT(\d+)", name)
    if m:
        return transitive_tournament(int(m.group(1)))
    m = re.fullmatch(r"(\d+)C3", name)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ValueError("kC3 needs k >= 1")
        g = directed_cycle(3)
        for _ in range(k - 1):
            g = disjoint_union(g, directed_cycle(3))
        return g
    raise ValueError(f"unknown builtin pattern {name!r}")


def load_pattern(arg: str) -> Digraph:
    import os

    if os.path.exists(arg):
        return load_digraph(arg)
    return builtin_pattern(arg)


def _limits_from_args(args) -> SearchLimits:
    return SearchLimits(
        max_pattern_vertices=getattr(args, "max_pattern", None) or 6,
        max_host_vertices=getattr(args, "max_host", None) or 12,
        node_budget=getattr(args, "node_budget", None) or 5_000_000,
        candidate_budget=getattr(args, "candidate_budget", None) or 300_000,
    )


def _host_json(hs) -> dict:
    return {"vertices": sorted(hs.vertices), "arc_indices": list(hs.arc_indices)}


def _model_json(model) -> dict:
    from .containment import (
        ButterflyMinorModel,
        PathsModel,
        StrongMinorModel,
        SubdigraphModel,
    )

    if isinstance(model, SubdigraphModel):
        return {"type": "subdigraph", "vertex_map": list(model.vertex_map),
                "arc_map": list(model.arc_map)}
    if isinstance(model, PathsModel):
        return {"type": "paths", "branch_map": list(model.branch_map),
                "paths": [list(p) for p in model.paths]}
    if isinstance(model, StrongMinorModel):
        return {"type": "strong-minor",
                "branch_sets": [sorted(b) for b in model.branch_sets],
                "arc_assignment": list(model.arc_assignment)}
    if isinstance(model, ButterflyMinorModel):
        return {"type": "butterfly-minor",
                "witness_vertices": sorted(model.witness_vertices),
                "witness_arcs": list(model.witness_arcs),
                "contractions": [list(a) for a in model.contractions]}
    raise ValueError("unknown model type")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.s == 0 and args.multi <= 1:
        g = random_tournament(args.n, args.seed)
    else:
        g = random_s_semicomplete(args.n, args.s, args.multi, args.seed)
    text = format_dgr(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_width(args) -> int:
    g = load_digraph(args.input)
    if args.pathwidth:
        cert = directed_pathwidth(g)
        witness = {"bags": [sorted(b) for b in cert.witness.bags]}
    else:
        cert = cutwidth(g)
        witness = {"layout": list(cert.witness.order)}
    print(f"{cert.kind} {cert.value}")
    print(json.dumps(witness))
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            json.dump({"kind": cert.kind, "value": cert.value, **witness}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def cmd_contain(args) -> int:
    h = load_pattern(args.pattern)
    g = load_digraph(args.host)
    rel = parse_relation(args.relation)
    limits = _limits_from_args(args)
    model = contains(h, g, rel, limits)
    if model is None:
        print("no")
        return EXIT_OK
    chk = verify_model(h, g, rel, model)
    if not chk.ok:
        print(f"witness failed verification: {chk.reason}", file=sys.stderr)
        return EXIT_VIOLATION
    print("yes")
    print(json.dumps(_model_json(model)))
    return EXIT_OK


def cmd_pack(args) -> int:
    h = load_pattern(args.pattern)
    g = load_digraph(args.host)
    rel = parse_relation(args.relation)
    family = enumerate_minimal_hosts(h, g, rel, limits=_limits_from_args(args))
    nu, picked = max_packing(family, args.mode)
    print(f"nu {nu}")
    print(json.dumps([_host_json(hs) for hs in picked]))
    return EXIT_OK


def cmd_cover(args) -> int:
    h = load_pattern(args.pattern)
    g = load_digraph(args.host)
    rel = parse_relation(args.relation)
    family = enumerate_minimal_hosts(h, g, rel, limits=_limits_from_args(args))
    cover = min_cover(family, args.mode)
    print(f"tau {len(cover)}")
    if args.mode == "vertex":
        print(json.dumps(sorted(cover)))
    else:
        print(json.dumps([{"arc_index": i, "arc": list(g.arcs[i])} for i in sorted(cover)]))
    return EXIT_OK


def _epcheck_instances(args):
    """Yields (instance_id, seed, digraph) per the ensemble spec."""
    if args.ensemble == "exhaustive":
        for n in range(1, args.max_n + 1):
            if args.up_to_iso:
                for i, g in enumerate(tournaments_up_to_iso(n)):
                    yield f"T{n}-iso{i}", None, g
            else:
                for i, g in enumerate(all_tournaments(n)):
                    yield f"T{n}-{i}", None, g
    else:
        for i in range(args.count):
            seed = derive_seed(args.seed, i)
            g = random_s_semicomplete(args.n, args.s, args.multi, seed)
            yield f"R{i}-n{args.n}-s{args.s}", seed, g


def _epcheck_one(payload) -> dict:
    (pattern_text, host_text, rel_name, mode, k_max, limits_tuple,
     seed, instance_id) = payload
    from .dgr import parse_dgr

    h = parse_dgr(pattern_text)
    g = parse_dgr(host_text)
    limits = SearchLimits(*limits_tuple)
    report = ep_verify(h, g, parse_relation(rel_name), mode, k_max,
                       limits=limits, seed=seed, instance_id=instance_id)
    return report.to_json_dict()


def _csv_text(report_dicts) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rd in report_dicts:
        writer.writerow([rd[c] if rd[c] is not None else "" for c in CSV_COLUMNS])
    return buf.getvalue()


def cmd_epcheck(args) -> int:
    h = load_pattern(args.pattern)
    rel = parse_relation(args.relation)
    config = ExperimentConfig(
        pattern=args.pattern,
        relation=rel.value,
        mode=args.mode,
        ensemble=args.ensemble,
        k_max=args.k_max,
        max_n=args.max_n,
        n=args.n,
        s=args.s,
        count=args.count,
        multi=args.multi,
        seed=args.seed,
        up_to_iso=args.up_to_iso,
        deterministic=args.deterministic,
        jobs=args.jobs,
        time_per_instance=args.time_per_instance,
    )
    limits = _limits_from_args(args)
    limits_tuple = (
        limits.max_pattern_vertices,
        limits.max_host_vertices,
        limits.node_budget,
        limits.candidate_budget,
    )
    pattern_text = format_dgr(h)
    payloads = []
    for instance_id, seed, g in _epcheck_instances(args):
        payloads.append((pattern_text, format_dgr(g), rel.value, args.mode,
                         args.k_max, limits_tuple, seed, instance_id))
    if not payloads:
        print("empty ensemble", file=sys.stderr)
        return EXIT_MALFORMED

    report_dicts = []
    started = time.monotonic()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            report_dicts = list(pool.map(_epcheck_one, payloads))
    else:
        for payload in payloads:
            t0 = time.monotonic()
            report_dicts.append(_epcheck_one(payload))
            if args.time_per_instance and time.monotonic() - t0 > args.time_per_instance:
                raise EnumerationBudgetError(
                    f"instance {payload[-1]} exceeded --time-per-instance"
                )

    artifact = RunArtifact(
        config=config,
        reports=report_dicts,
        generated_at=datetime.now(timezone.utc).isoformat(),
        elapsed_seconds=round(time.monotonic() - started, 3),
    )
    if args.out_json:
        save_report(artifact, args.out_json)
    if args.out_csv:
        with open(args.out_csv, "w", encoding="utf-8") as fh:
            fh.write(_csv_text(report_dicts))
    print(f"instances {len(report_dicts)} violations {artifact.violations}")
    return EXIT_OK if artifact.violations == 0 else EXIT_VIOLATION


def cmd_probe_threshold(args) -> int:
    h = load_pattern(args.pattern)
    rel = parse_relation(args.relation)
    limits = _limits_from_args(args)
    use_cutwidth = rel is Relation.IMMERSION
    table = {}
    for n in range(1, args.max_n + 1):
        if args.ensemble == "exhaustive":
            hosts = (
                tournaments_up_to_iso(n) if args.up_to_iso else all_tournaments(n)
            )
        else:
            hosts = (
                random_s_semicomplete(n, args.s, args.multi, derive_seed(args.seed, 1000 * n + i))
                for i in range(args.count)
            )
        best = None
        for g in hosts:
            if contains(h, g, rel, limits) is not None:
                continue
            width = cutwidth(g).value if use_cutwidth else directed_pathwidth(g).value
            if best is None or width > best:
                best = width
        table[n] = best
    label = "eta_hat" if use_cutwidth else "zeta_hat"
    for n in sorted(table):
        print(f"n={n} {label}={table[n] if table[n] is not None else 'NA'}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"pattern": args.pattern, "relation": rel.value,
                       "measure": "cutwidth" if use_cutwidth else "pathwidth",
                       "thresholds": {str(n): table[n] for n in sorted(table)}},
                      fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="packcover",
        description="Exact digraph containment, width certificates, and "
                    "packing/covering checks on tournament-like hosts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_limits(p):
        p.add_argument("--max-pattern", type=int, default=None)
        p.add_argument("--max-host", type=int, default=None)
        p.add_argument("--node-budget", type=int, default=None)
        p.add_argument("--candidate-budget", type=int, default=None)

    p = sub.add_parser("gen", help="write a random tournament / s-semicomplete digraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--multi", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("width", help="exact pathwidth or cutwidth with certificate")
    p.add_argument("input")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--pathwidth", action="store_true")
    grp.add_argument("--cutwidth", action="store_true")
    p.add_argument("--certificate", default=None)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("contain", help="decide a containment relation with witness")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--deterministic", action="store_true")
    add_limits(p)
    p.set_defaults(func=cmd_contain)

    p = sub.add_parser("pack", help="maximum disjoint packing of minimal hosts")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--mode", choices=["vertex", "arc"], default="vertex")
    add_limits(p)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("cover", help="minimum cover meeting all minimal hosts")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--mode", choices=["vertex", "arc"], default="vertex")
    add_limits(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("epcheck", help="packing/covering verification over an ensemble")
    p.add_argument("--pattern", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--mode", choices=["vertex", "arc"], default="vertex")
    p.add_argument("--ensemble", choices=["exhaustive", "random"], default="random")
    p.add_argument("--max-n", type=int, default=4, help="exhaustive ensembles: largest n")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--n", type=int, default=6, help="random ensembles: host size")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--multi", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--deterministic", action="store_true",
                   help="single fixed search order (always on; flag recorded in config)")
    p.add_argument("--time-per-instance", type=float, default=None)
    p.add_argument("--out-json", default=None)
    p.add_argument("--out-csv", default=None)
    add_limits(p)
    p.set_defaults(func=cmd_epcheck)

    p = sub.add_parser("probe-threshold",
                       help="max width among hosts avoiding the pattern (empirical threshold)")
    p.add_argument("--pattern", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--ensemble", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--multi", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    add_limits(p)
    p.set_defaults(func=cmd_probe_threshold)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_MALFORMED
    try:
        return args.func(args)
    except EnumerationBudgetError as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except SizeCapError as e:
        print(f"size cap exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (DgrFormatError, FileNotFoundError, ValueError) as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
