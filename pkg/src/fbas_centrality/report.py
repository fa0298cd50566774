"""Assemble centrality reports and render them as text, CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import centrality as cm
from .config import AnalysisConfig
from .fbas import Fbas, enumerate_quorums, quorum_intersection_witness
from .intactness import WeightScheme, enumerate_dsets, intactness_matrices
from .trust import build_trust_graph, scc_decomposition

SCHEMA_VERSION = 1
NOT_APPLICABLE = "–"


@dataclass
class MeasureResult:
    measure: str
    scores: dict[str, float] | None = None
    ranks: dict[str, int] | None = None
    reason: str | None = None

    @property
    def applicable(self) -> bool:
        return self.scores is not None


@dataclass
class CentralityReport:
    nodes: tuple[str, ...]
    measures: dict[str, MeasureResult]
    summary: dict
    warnings: list[str] = field(default_factory=list)

    @property
    def all_not_applicable(self) -> bool:
        return bool(self.measures) and not any(r.applicable for r in self.measures.values())


def sig3(x: float) -> float:
    """Round to three significant digits."""
    return float(f"{x:.3g}")


def structural_summary(fbas: Fbas, quorums, sccs, dsets=None) -> dict:
    witness = quorum_intersection_witness(fbas, quorums)
    return {
        "nodes": fbas.n,
        "quorums": len(quorums),
        "minimal_quorums": len(quorums.minimal),
        "dsets": None if dsets is None else len(dsets),
        "sccs": [sccs.component_ids(c) for c in range(len(sccs.components))],
        "greatest_scc": None if sccs.greatest is None else sccs.component_ids(sccs.greatest),
        "quorum_intersection": witness is None,
        "witness": None if witness is None else [fbas.sorted_ids(q) for q in witness],
    }


def build_report(fbas: Fbas, cfg: AnalysisConfig | None = None) -> CentralityReport:
    cfg = cfg or AnalysisConfig()
    graph = build_trust_graph(fbas)
    sccs = scc_decomposition(graph)
    quorums = enumerate_quorums(fbas, cfg.max_nodes_quorums)

    wanted = set(cfg.measures)
    dsets = matrices = None
    if wanted & {"il", "hl", "ie"} or fbas.n <= cfg.max_nodes_intactness:
        dsets = enumerate_dsets(fbas, cfg.max_nodes_intactness)
    if wanted & {"il", "hl", "ie"}:
        weights = WeightScheme("exp" if cfg.weights == "exp" else "inv")
        matrices = intactness_matrices(fbas, dsets, graph, weights, cfg.max_nodes_intactness)

    summary = structural_summary(fbas, quorums, sccs, dsets)
    warnings = []
    if not summary["quorum_intersection"]:
        warnings.append("the FBAS does not have quorum intersection; "
                        "scores describe a system that cannot guarantee consensus")

    compute = {
        "te": lambda: cm.trust_eigenvector(fbas, cfg.scope, graph),
        "ts": lambda: cm.trust_subgraph(fbas, graph),
        "qe": lambda: cm.quorum_eigenvector(fbas, quorums),
        "qs": lambda: cm.quorum_subhypergraph(fbas, quorums),
        "il": lambda: cm.intactness_linear(fbas, matrices, cfg.base, cfg.mu_factor),
        "hl": lambda: cm.hierarchical_intactness_linear(fbas, matrices, cfg.base, cfg.mu_factor),
        "ie": lambda: cm.intactness_eigenvector(fbas, matrices),
    }
    results = {}
    for m in cfg.measures:
        try:
            scores = compute[m]()
        except cm.NotApplicableError as exc:
            results[m] = MeasureResult(m, reason=str(exc))
            continue
        results[m] = MeasureResult(m, scores.as_dict(), cm.rank(scores, cfg.tie_tol))
    return CentralityReport(fbas.nodes, results, summary, warnings)


def _cell(result: MeasureResult, node: str) -> str:
    if not result.applicable or node not in result.scores:
        return NOT_APPLICABLE
    return f"{result.ranks[node]} ({sig3(result.scores[node])})"


def render_table(report: CentralityReport) -> str:
    header = ["Node"] + [f"c_{m}" for m in report.measures]
    rows = [[v] + [_cell(r, v) for r in report.measures.values()] for v in report.nodes]
    widths = [max(len(row[k]) for row in [header] + rows) for k in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header] + rows]
    s = report.summary
    lines.append("")
    lines.append(f"# quorums: {s['quorums']} ({s['minimal_quorums']} minimal)")
    if s["dsets"] is not None:
        lines.append(f"# DSets: {s['dsets']}")
    lines.append(f"# SCCs: {' | '.join(', '.join(c) for c in s['sccs'])}")
    greatest = s["greatest_scc"]
    lines.append(f"# greatest SCC: {', '.join(greatest) if greatest else 'none'}")
    lines.append(f"# quorum intersection: {'true' if s['quorum_intersection'] else 'false'}")
    for m, r in report.measures.items():
        if not r.applicable:
            lines.append(f"# c_{m} not applicable: {r.reason}")
    return "\n".join(lines) + "\n"


def render_csv(report: CentralityReport) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["node", "measure", "score", "rank"])
    for m, r in report.measures.items():
        for v in report.nodes:
            if r.applicable and v in r.scores:
                out.writerow([v, m, repr(r.scores[v]), r.ranks[v]])
            else:
                out.writerow([v, m, "NA", ""])
    return buf.getvalue()


def report_to_dict(report: CentralityReport) -> dict:
    measures = {}
    for m, r in report.measures.items():
        if r.applicable:
            measures[m] = {"applicable": True, "scores": r.scores, "ranks": r.ranks}
        else:
            measures[m] = {"applicable": False, "reason": r.reason}
    return {
        "schema": SCHEMA_VERSION,
        "nodes": list(report.nodes),
        "summary": report.summary,
        "measures": measures,
        "warnings": report.warnings,
    }


def render_json(report: CentralityReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


RENDERERS = {"table": render_table, "csv": render_csv, "json": render_json}
