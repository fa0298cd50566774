"""Node centrality measures for an FBAS.

Each measure returns a :class:`CentralityScores` whose values are scaled so
the largest one is exactly 1.0. The measure tags are

    te  trust graph eigenvector        ts  trust graph subgraph
    qe  quorum eigenvector             qs  quorum subhypergraph
    il  intactness linear system       hl  hierarchical intactness linear system
    ie  intactness eigenvector (only defined for irreducible intactness matrices)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .fbas import Fbas, QuorumCatalog, delete
from .hypergraph import hyper_adjacency, incidence_matrix
from .intactness import IntactnessMatrices
from .linalg import dominant_left_eigenpair, exp_diagonal, solve, spectral_norm
from .trust import (
    TrustGraph,
    adjacency_matrix,
    build_trust_graph,
    graph_from_matrix,
    is_strongly_connected,
    scc_decomposition,
)

MEASURE_NAMES = {
    "te": "trust graph eigenvector",
    "ts": "trust graph subgraph",
    "qe": "quorum eigenvector",
    "qs": "quorum subhypergraph",
    "il": "intactness linear system",
    "hl": "hierarchical intactness linear system",
    "ie": "intactness eigenvector",
}


class NotApplicableError(ValueError):
    """The measure is not defined for this FBAS."""


@dataclass(frozen=True)
class CentralityScores:
    measure: str
    nodes: tuple[str, ...]
    values: np.ndarray

    def __getitem__(self, node: str) -> float:
        return float(self.values[self.nodes.index(node)])

    def as_dict(self) -> dict[str, float]:
        return {v: float(x) for v, x in zip(self.nodes, self.values)}


def normalize(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    top = x.max()
    if not top > 0:
        raise ValueError("cannot normalize a vector without a positive entry")
    out = x / top
    out[out < 0] = 0.0  # rounding noise only
    return out


def trust_eigenvector(fbas: Fbas, scope: str = "whole", graph: TrustGraph | None = None,
                      start=None) -> CentralityScores:
    """Left Perron vector of the trust graph adjacency matrix.

    With ``scope="greatest_scc"`` the FBAS is first restricted to its
    greatest SCC and only those nodes are scored.
    """
    if scope == "greatest_scc":
        sccs = scc_decomposition(graph or build_trust_graph(fbas))
        if sccs.greatest is None:
            raise NotApplicableError("the trust graph has no greatest SCC")
        fbas = delete(fbas, fbas.full & ~sccs.greatest_nodes)
        graph = None
    elif scope != "whole":
        raise ValueError(f"unknown scope {scope!r}")
    graph = graph or build_trust_graph(fbas)
    if not is_strongly_connected(graph):
        raise NotApplicableError("the trust graph is not strongly connected")
    _, x = dominant_left_eigenpair(adjacency_matrix(graph), start=start)
    return CentralityScores("te", fbas.nodes, normalize(x))


def trust_subgraph(fbas: Fbas, graph: TrustGraph | None = None) -> CentralityScores:
    a = adjacency_matrix(graph or build_trust_graph(fbas))
    diag = exp_diagonal(a)
    return CentralityScores("ts", fbas.nodes, normalize(diag.values))


def quorum_eigenvector(fbas: Fbas, quorums: QuorumCatalog, start=None) -> CentralityScores:
    m = incidence_matrix(fbas, quorums)
    _, x = dominant_left_eigenpair(m @ m.T, start=start)
    return CentralityScores("qe", fbas.nodes, normalize(x))


def quorum_side_scores(fbas: Fbas, quorums: QuorumCatalog) -> dict[int, float]:
    """Scores of the quorums themselves, keyed by quorum bitmask."""
    m = incidence_matrix(fbas, quorums)
    _, y = dominant_left_eigenpair(m.T @ m)
    return dict(zip(quorums.quorums, normalize(y).tolist()))


def quorum_subhypergraph(fbas: Fbas, quorums: QuorumCatalog) -> CentralityScores:
    a = hyper_adjacency(incidence_matrix(fbas, quorums))
    # shifted by the top eigenvalue; the factor cancels in the normalization
    diag = exp_diagonal(a, symmetric=True)
    return CentralityScores("qs", fbas.nodes, normalize(diag.values))


def _base_vector(fbas: Fbas, base) -> np.ndarray:
    if base is None:
        return np.ones(fbas.n)
    if isinstance(base, dict):
        unknown = set(base) - set(fbas.nodes)
        if unknown:
            raise ValueError(f"base centrality given for unknown node {sorted(unknown)[0]!r}")
        b = np.array([float(base.get(v, 0.0)) for v in fbas.nodes])
    else:
        b = np.array(base, dtype=float)
    if b.shape != (fbas.n,) or np.any(b < 0) or not np.any(b > 0):
        raise ValueError("base centrality must be nonnegative with at least one positive entry")
    return b


def _katz_like(matrix: np.ndarray, b: np.ndarray, mu_factor: float) -> np.ndarray:
    if not 0.0 < mu_factor < 1.0:
        raise ValueError(f"mu_factor must lie in (0, 1), got {mu_factor}")
    norm = spectral_norm(matrix)
    mu = mu_factor / norm if norm > 0 else 1.0
    return solve(np.eye(len(b)) - mu * matrix, b)


def intactness_linear(fbas: Fbas, matrices: IntactnessMatrices, base=None,
                      mu_factor: float = 0.5) -> CentralityScores:
    b = _base_vector(fbas, base)
    return CentralityScores("il", fbas.nodes, normalize(_katz_like(matrices.a, b, mu_factor)))


def hierarchical_intactness_linear(fbas: Fbas, matrices: IntactnessMatrices, base=None,
                                   mu_factor: float = 0.5) -> CentralityScores:
    b = _base_vector(fbas, base)
    return CentralityScores("hl", fbas.nodes, normalize(_katz_like(matrices.b_hier, b, mu_factor)))


def intactness_eigenvector(fbas: Fbas, matrices: IntactnessMatrices, start=None) -> CentralityScores:
    a = matrices.a
    if not np.any(a):
        raise NotApplicableError("the intactness matrix is zero")
    if not is_strongly_connected(graph_from_matrix(fbas.nodes, a)):
        raise NotApplicableError("the intactness matrix is reducible")
    # right eigenvector of A is the left eigenvector of A^T
    _, x = dominant_left_eigenpair(a.T, start=start)
    return CentralityScores("ie", fbas.nodes, normalize(x))


def rank(scores: CentralityScores, tie_tol: float = config.TIE_TOL) -> dict[str, int]:
    """Dense ranking, 1 for the highest score; scores within ``tie_tol`` share a rank."""
    order = sorted(range(len(scores.nodes)), key=lambda i: -scores.values[i])
    ranks = {}
    current = 0
    previous = None
    for i in order:
        value = scores.values[i]
        if previous is None or abs(previous - value) > tie_tol:
            current += 1
        previous = value
        ranks[scores.nodes[i]] = current
    return {v: ranks[v] for v in scores.nodes}
