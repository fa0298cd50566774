"""Node centrality for federated Byzantine agreement systems (FBAS)."""

from .centrality import (
    CentralityScores,
    NotApplicableError,
    hierarchical_intactness_linear,
    intactness_eigenvector,
    intactness_linear,
    quorum_eigenvector,
    quorum_side_scores,
    quorum_subhypergraph,
    rank,
    trust_eigenvector,
    trust_subgraph,
)
from .config import AnalysisConfig
from .document import load_bundled, load_fbas, loads_fbas, parse_fbas
from .fbas import (
    Clause,
    Conditions,
    EnumerationLimitError,
    Explicit,
    Fbas,
    FbasError,
    QuorumCatalog,
    contract_to_quorum,
    delete,
    enumerate_quorums,
    expand_template,
    has_quorum_intersection,
    is_quorum,
    quorum_intersection_witness,
    validate,
)
from .intactness import (
    DsetCatalog,
    IntactnessMatrices,
    WeightScheme,
    befouled_set,
    enumerate_dsets,
    intactness_matrices,
    is_dset,
)
from .report import build_report
from .trust import build_trust_graph, scc_decomposition

__version__ = "0.1.0"
