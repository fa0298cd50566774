"""Command line interface.

    fbas-centrality quorums FILE
    fbas-centrality dsets FILE
    fbas-centrality check-intersection FILE
    fbas-centrality centrality FILE --measures all [--figure scores.png]
    fbas-centrality dot FILE
    fbas-centrality examples

FILE is an FBAS document, or ``builtin:NAME`` for one of the bundled examples.
Exit status: 0 on success, 1 on errors, 2 when every requested measure is
not applicable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import config
from .config import AnalysisConfig
from .document import bundled_examples, load_bundled, load_fbas
from .fbas import FbasError, enumerate_quorums, quorum_intersection_witness
from .intactness import enumerate_dsets
from .report import RENDERERS, SCHEMA_VERSION, build_report
from .trust import build_trust_graph

EXIT_OK, EXIT_ERROR, EXIT_NOT_APPLICABLE = 0, 1, 2


def read_fbas(source: str):
    if source.startswith("builtin:"):
        return load_bundled(source[len("builtin:"):])
    return load_fbas(source)


def _fmt_set(ids) -> str:
    return "{" + ", ".join(ids) + "}"


def _emit_sets(kind: str, sets: list[list[str]], fmt: str, extra: dict | None = None) -> str:
    extra = extra or {}
    if fmt == "json":
        return json.dumps({"schema": SCHEMA_VERSION, "count": len(sets), kind: sets, **extra}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["index", "size", "members"])
        for k, s in enumerate(sets):
            out.writerow([k, len(s), " ".join(s)])
        return buf.getvalue()
    lines = [f"{len(sets)} {kind}"] + [_fmt_set(s) for s in sets]
    return "\n".join(lines) + "\n"


def cmd_quorums(args) -> int:
    fbas = read_fbas(args.file)
    catalog = enumerate_quorums(fbas, args.max_nodes_quorums)
    sets = catalog.sets(minimal_only=args.minimal)
    kind = "minimal quorums" if args.minimal else "quorums"
    if args.format == "json":
        kind = "minimal_quorums" if args.minimal else "quorums"
    sys.stdout.write(_emit_sets(kind, sets, args.format))
    return EXIT_OK


def cmd_dsets(args) -> int:
    fbas = read_fbas(args.file)
    catalog = enumerate_dsets(fbas, args.max_nodes_intactness)
    kind = "dsets" if args.format == "json" else "DSets"
    sys.stdout.write(_emit_sets(kind, catalog.sets(), args.format))
    return EXIT_OK


def cmd_check_intersection(args) -> int:
    fbas = read_fbas(args.file)
    witness = quorum_intersection_witness(fbas, max_nodes=args.max_nodes_quorums)
    pair = None if witness is None else [fbas.sorted_ids(q) for q in witness]
    if args.format == "json":
        doc = {"schema": SCHEMA_VERSION, "quorum_intersection": witness is None, "witness": pair}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif witness is None:
        sys.stdout.write("true\n")
    else:
        sys.stdout.write(f"false\ndisjoint quorums: {_fmt_set(pair[0])} {_fmt_set(pair[1])}\n")
    return EXIT_OK


def _parse_measures(values) -> tuple[str, ...]:
    chosen: list[str] = []
    for value in values or ["all"]:
        for m in value.split(","):
            m = m.strip().lower().removeprefix("c_")
            if not m:
                continue
            picked = config.MEASURES if m == "all" else (m,)
            chosen.extend(x for x in picked if x not in chosen)
    return tuple(chosen)


def _read_base(value: str):
    if value == "uniform":
        return None
    with open(value, encoding="utf-8") as fh:
        base = json.load(fh)
    if not isinstance(base, dict):
        raise FbasError("base centrality file must hold a JSON object mapping node ids to numbers")
    return {str(k): float(v) for k, v in base.items()}


def cmd_centrality(args) -> int:
    fbas = read_fbas(args.file)
    cfg = AnalysisConfig(
        measures=_parse_measures(args.measures),
        scope=args.scope,
        weights=args.weights,
        mu_factor=args.mu_factor,
        base=_read_base(args.base),
        max_nodes_quorums=args.max_nodes_quorums,
        max_nodes_intactness=args.max_nodes_intactness,
        output_format=args.format,
        tie_tol=args.tie_tol,
    )
    report = build_report(fbas, cfg)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    sys.stdout.write(RENDERERS[cfg.output_format](report))
    if args.figure:
        from .plotting import plot_scores

        plot_scores(report, args.figure, title=args.title)
    return EXIT_NOT_APPLICABLE if report.all_not_applicable else EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(build_trust_graph(read_fbas(args.file)).to_dot())
    return EXIT_OK


def cmd_examples(args) -> int:
    for name in bundled_examples():
        print(f"builtin:{name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fbas-centrality",
        description="Quorums, DSets and node centralities of federated Byzantine agreement systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, intactness=False):
        p.add_argument("file", help="FBAS document (JSON) or builtin:NAME")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--max-nodes-quorums", type=int, default=None,
                       help=f"quorum enumeration cap (default {config.DEFAULT_MAX_NODES_QUORUMS}, "
                            f"env {config.ENV_MAX_NODES_QUORUMS})")
        if intactness:
            p.add_argument("--max-nodes-intactness", type=int, default=None,
                           help=f"DSet analysis cap (default {config.DEFAULT_MAX_NODES_INTACTNESS}, "
                                f"env {config.ENV_MAX_NODES_INTACTNESS})")

    p = sub.add_parser("quorums", help="list all quorums")
    common(p)
    p.add_argument("--minimal", action="store_true", help="list only the minimal quorums")
    p.set_defaults(func=cmd_quorums)

    p = sub.add_parser("dsets", help="list all dispensable sets")
    common(p, intactness=True)
    p.set_defaults(func=cmd_dsets)

    p = sub.add_parser("check-intersection", help="decide quorum intersection")
    common(p)
    p.set_defaults(func=cmd_check_intersection)

    p = sub.add_parser("centrality", help="compute node centralities")
    common(p, intactness=True)
    p.add_argument("--measures", "--measure", action="append", metavar="LIST",
                   help="comma separated subset of te,ts,qe,qs,il,hl,ie or 'all' (default all)")
    p.add_argument("--scope", choices=["whole", "greatest_scc"], default="whole",
                   help="trust graph eigenvector on the whole FBAS or its greatest SCC")
    p.add_argument("--weights", choices=["exp", "inv"], default="exp",
                   help="ill-behaved set weights 2^-|I| (exp) or 1/|I| (inv)")
    p.add_argument("--mu-factor", type=float, default=0.5)
    p.add_argument("--base", default="uniform", metavar="uniform|FILE",
                   help="base centrality: uniform, or a JSON file mapping node ids to values")
    p.add_argument("--tie-tol", type=float, default=config.TIE_TOL)
    p.add_argument("--figure", metavar="PATH", help="also write a bar chart of the scores")
    p.add_argument("--title", help="figure title")
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("dot", help="print the trust graph in DOT format")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("examples", help="list the bundled example documents")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for cap in ("max_nodes_quorums", "max_nodes_intactness"):
        if getattr(args, cap, None) is None and hasattr(args, cap):
            default = config.max_nodes_quorums if cap == "max_nodes_quorums" else config.max_nodes_intactness
            setattr(args, cap, default())
    try:
        return args.func(args)
    except (FbasError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
