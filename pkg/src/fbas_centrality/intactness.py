"""Dispensable sets, befouled nodes and the intactness matrices.

A set ``D`` is dispensable (a DSet) when ``D = V``, or when ``V \\ D`` is a
quorum and the FBAS with ``D`` deleted has quorum intersection. Given the
DSets, the nodes befouled by an ill-behaved set ``I`` are the nodes outside
``I`` that every DSet containing ``I`` also contains.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import config
from .fbas import (
    EnumerationLimitError,
    Fbas,
    NodeSet,
    bits_of,
    delete,
    has_quorum_intersection,
    is_quorum,
    quorum_table,
    satisfaction_table,
    subset_bits,
    subsets_containing_true,
)
from .trust import TrustGraph, reachable_set, reaching_set


def _intactness_cap(fbas: Fbas, max_nodes: int | None) -> None:
    cap = config.max_nodes_intactness() if max_nodes is None else max_nodes
    if fbas.n > cap:
        raise EnumerationLimitError("DSet analysis", fbas.n, cap)


def is_dset(fbas: Fbas, d, max_nodes: int | None = None) -> bool:
    """Decide a single set directly from the definition."""
    d = fbas.mask(d)
    if d == fbas.full:
        return True
    if not is_quorum(fbas, fbas.full & ~d):
        return False
    return has_quorum_intersection(delete(fbas, d), max_nodes=max_nodes)


@dataclass(frozen=True)
class DsetCatalog:
    """All DSets of an FBAS in increasing bitmask order."""

    nodes: tuple[str, ...]
    dsets: tuple[NodeSet, ...]
    _table: np.ndarray = field(repr=False, compare=False)

    def __len__(self):
        return len(self.dsets)

    def __iter__(self):
        return iter(self.dsets)

    def __contains__(self, d):
        return bool(self._table[d])

    @property
    def full(self) -> NodeSet:
        return (1 << len(self.nodes)) - 1

    def sets(self) -> list[list[str]]:
        return [[self.nodes[i] for i in bits_of(d)] for d in self.dsets]


def dset_table(fbas: Fbas) -> np.ndarray:
    """Boolean array over all subsets ``D`` marking the DSets.

    For ``U`` disjoint from ``D``, a member of ``U`` has a punctured slice
    inside ``U`` exactly when one of its original slices lies inside
    ``U | D``, so one satisfaction table serves every deleted FBAS.
    """
    n = fbas.n
    full = fbas.full
    sat = satisfaction_table(fbas)
    members = subset_bits(n)
    quorums = quorum_table(fbas, sat)
    w = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=bool)
    out[full] = True
    for d in range(full):
        if not quorums[full & ~d]:
            continue
        rest = full & ~d
        q = np.all(~members | sat[:, w | d], axis=0)
        q &= (w & d) == 0
        q[0] = False
        holds = subsets_containing_true(q, n)
        # two disjoint quorums exist iff some quorum's complement holds one
        out[d] = not np.any(q & holds[rest & ~w])
    return out


def enumerate_dsets(fbas: Fbas, max_nodes: int | None = None) -> DsetCatalog:
    _intactness_cap(fbas, max_nodes)
    table = dset_table(fbas)
    return DsetCatalog(fbas.nodes, tuple(int(d) for d in np.flatnonzero(table)), table)


def befouled_set(catalog: DsetCatalog, i) -> NodeSet:
    """Nodes outside ``i`` that no DSet containing ``i`` leaves out."""
    i = int(i)
    befouled = catalog.full & ~i
    for d in catalog.dsets:
        if d & i == i:
            befouled &= d
    return befouled


def befouled_table(catalog: DsetCatalog) -> np.ndarray:
    """``F[I]`` for every subset ``I``, as an int64 array of bitmasks."""
    n = len(catalog.nodes)
    full = catalog.full
    w = np.arange(1 << n, dtype=np.int64)
    meet = np.where(catalog._table, w, full)
    # AND over all supersets
    for b in range(n):
        meet &= meet[w | (1 << b)]
    return meet & ~w


@dataclass(frozen=True)
class WeightScheme:
    """Weight of an ill-behaved set as a function of its size.

    ``kind`` is ``"exp"`` (``2**-|I|``), ``"inv"`` (``1/|I|``) or ``"custom"``
    with ``table`` mapping sizes to weights.
    """

    kind: str = "exp"
    table: dict[int, float] | None = None

    def weight(self, size: int) -> float:
        if size <= 0:
            raise ValueError("weights are defined for nonempty sets only")
        if self.kind == "exp":
            return 2.0 ** -size
        if self.kind == "inv":
            return 1.0 / size
        if self.kind == "custom":
            value = float(self.table[size])
            if value <= 0:
                raise ValueError("custom weights must be positive")
            return value
        raise ValueError(f"unknown weight scheme {self.kind!r}")

    def weights(self, n: int) -> np.ndarray:
        """Weight of every subset ``I`` of an ``n``-node universe (0 for the empty set)."""
        sizes = subset_bits(n).sum(axis=0)
        lookup = np.array([0.0] + [self.weight(k) for k in range(1, n + 1)])
        return lookup[sizes]


@dataclass(frozen=True)
class IntactnessMatrices:
    """``a[i, j]`` sums the weights of the sets ``I`` holding ``i`` that befoul ``j``.

    ``b_hier`` keeps only sets inside the reach of ``i`` and befouled nodes
    that can reach ``i``.
    """

    nodes: tuple[str, ...]
    a: np.ndarray
    b_hier: np.ndarray


def intactness_matrices(fbas: Fbas, catalog: DsetCatalog, graph: TrustGraph,
                        weights: WeightScheme | None = None,
                        max_nodes: int | None = None) -> IntactnessMatrices:
    _intactness_cap(fbas, max_nodes)
    if catalog.nodes != fbas.nodes or graph.nodes != fbas.nodes:
        raise ValueError("catalog and trust graph must belong to the given FBAS")
    weights = weights or WeightScheme()
    n = fbas.n
    w = np.arange(1 << n, dtype=np.int64)
    befouled = befouled_table(catalog)
    members = subset_bits(n)  # members[i, I]
    hit = ((befouled[:, None] >> np.arange(n)) & 1).astype(float)  # hit[I, j]
    wI = weights.weights(n)
    a = (members * wI) @ hit
    b = np.zeros((n, n))
    for i in range(n):
        reach = reachable_set(graph, i)
        reaching = reaching_set(graph, i)
        rows = members[i] & ((w & ~reach) == 0)
        row = wI[rows] @ hit[rows]
        for j in range(n):
            if reaching >> j & 1:
                b[i, j] = row[j]
    return IntactnessMatrices(fbas.nodes, a, b)
