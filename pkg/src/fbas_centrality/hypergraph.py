"""Incidence and adjacency matrices of the quorum hypergraph."""

from __future__ import annotations

import numpy as np

from .fbas import Fbas, QuorumCatalog, bits_of


def incidence_matrix(fbas: Fbas, quorums: QuorumCatalog) -> np.ndarray:
    """Node-by-quorum 0/1 matrix, columns in catalog order."""
    if quorums.nodes != fbas.nodes:
        raise ValueError("quorum catalog belongs to a different FBAS")
    m = np.zeros((fbas.n, len(quorums)))
    for j, q in enumerate(quorums.quorums):
        for i in bits_of(q):
            m[i, j] = 1.0
    return m


def hyper_adjacency(incidence) -> np.ndarray:
    """``a_ij`` = number of quorums holding both ``i`` and ``j``; zero diagonal."""
    m = np.asarray(incidence, dtype=float)
    a = m @ m.T
    np.fill_diagonal(a, 0.0)
    return a
