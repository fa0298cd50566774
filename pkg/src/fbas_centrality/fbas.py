"""FBAS data model, quorum predicates and quorum enumeration.

Node sets are plain ``int`` bitmasks over the node index, where node ``i``
is the ``i``-th id in sorted order. Use :meth:`Fbas.mask` and
:meth:`Fbas.ids` to convert between bitmasks and ids.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import config

NodeSet = int


class FbasError(ValueError):
    """Raised for malformed FBAS definitions."""


class EnumerationLimitError(FbasError):
    """Raised when an exhaustive scan would exceed the configured node cap."""

    def __init__(self, what: str, n: int, cap: int):
        super().__init__(
            f"{what} needs an exhaustive scan over 2^{n} subsets, "
            f"but the cap is {cap} nodes; raise the cap explicitly to proceed"
        )
        self.n = n
        self.cap = cap


def bits_of(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Fbas:
    """An FBAS ``(V, S)``.

    ``nodes`` is sorted; ``slices[i]`` holds the slice bitmasks of node ``i``
    in increasing order. Build instances with :meth:`from_mapping` unless the
    masks are already canonical.
    """

    nodes: tuple[str, ...]
    slices: tuple[tuple[int, ...], ...]

    @classmethod
    def from_mapping(cls, slices: Mapping[str, Iterable[Iterable[str]]], nodes=None) -> Fbas:
        """Build an FBAS from ``{node: [[ids...], ...]}`` and validate it."""
        names = sorted(set(nodes) if nodes is not None else set(slices))
        index = {v: i for i, v in enumerate(names)}
        if len(index) != len(names):
            raise FbasError("duplicate node ids")
        missing = [v for v in names if v not in slices]
        if missing:
            raise FbasError(f"node {missing[0]!r} has no quorum slices")
        extra = [v for v in slices if v not in index]
        if extra:
            raise FbasError(f"slices given for unknown node {extra[0]!r}")
        masks = []
        for v in names:
            own = set()
            for s in slices[v]:
                m = 0
                for u in s:
                    if u not in index:
                        raise FbasError(f"slice of node {v!r} mentions unknown node {u!r}")
                    m |= 1 << index[u]
                own.add(m)
            masks.append(tuple(sorted(own)))
        fbas = cls(tuple(names), tuple(masks))
        validate(fbas)
        return fbas

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def full(self) -> NodeSet:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    def index(self, node: str) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise FbasError(f"unknown node {node!r}") from None

    def mask(self, ids: Iterable[str] | NodeSet) -> NodeSet:
        """Bitmask of ``ids``; an ``int`` is taken to be a bitmask already."""
        if isinstance(ids, (int, np.integer)):
            m = int(ids)
            if m < 0 or m & ~self.full:
                raise FbasError(f"bitmask {m:#x} is not a subset of the node set")
            return m
        m = 0
        for v in ids:
            m |= 1 << self.index(v)
        return m

    def ids(self, mask: NodeSet) -> frozenset[str]:
        return frozenset(self.nodes[i] for i in bits_of(mask))

    def sorted_ids(self, mask: NodeSet) -> list[str]:
        return [self.nodes[i] for i in bits_of(mask)]

    def slices_of(self, node: str) -> list[frozenset[str]]:
        return [self.ids(s) for s in self.slices[self.index(node)]]

    def to_mapping(self) -> dict[str, list[list[str]]]:
        return {v: [self.sorted_ids(s) for s in self.slices[i]] for i, v in enumerate(self.nodes)}

    def relabel(self, mapping: Mapping[str, str]) -> Fbas:
        """Return the same FBAS with node ids renamed through ``mapping``."""
        renamed = {
            mapping[v]: [[mapping[u] for u in s] for s in slices]
            for v, slices in self.to_mapping().items()
        }
        return Fbas.from_mapping(renamed)


def validate(fbas: Fbas) -> None:
    """Check the FBAS invariants; raise :class:`FbasError` on the first violation."""
    if len(set(fbas.nodes)) != len(fbas.nodes):
        raise FbasError("duplicate node ids")
    if list(fbas.nodes) != sorted(fbas.nodes):
        raise FbasError("nodes are not in canonical (sorted) order")
    if len(fbas.slices) != fbas.n:
        raise FbasError("slice table length does not match the node count")
    full = fbas.full
    for i, v in enumerate(fbas.nodes):
        own = fbas.slices[i]
        if not own:
            raise FbasError(f"node {v!r} has an empty set of quorum slices")
        for s in own:
            if s & ~full:
                raise FbasError(f"slice of node {v!r} mentions an unknown node")
            if not s >> i & 1:
                raise FbasError(f"node {v!r} is missing from its own slice {sorted(fbas.ids(s))}")


# ---------------------------------------------------------------------------
# slice templates


@dataclass(frozen=True)
class Explicit:
    slices: tuple[frozenset[str], ...]


@dataclass(frozen=True)
class Clause:
    pool: frozenset[str]
    count: int


@dataclass(frozen=True)
class Conditions:
    """Slices satisfying at least ``satisfy`` of the ``clauses``.

    A clause ``(pool, count)`` holds for a set when the set contains at least
    ``count`` nodes of ``pool``. With ``owner_included`` the owner counts
    towards its own pool, otherwise it is left out of the count.
    """

    clauses: tuple[Clause, ...]
    satisfy: int
    owner_included: bool = False


SliceTemplate = Explicit | Conditions


def expand_template(owner: str, template: SliceTemplate, universe: Iterable[str]) -> list[frozenset[str]]:
    """Expand ``template`` into the slice family of ``owner``.

    Conditions templates yield the inclusion-minimal satisfying sets. The
    result is deduplicated and ordered by bitmask over the sorted universe.
    """
    names = sorted(set(universe))
    if owner not in names:
        raise FbasError(f"owner {owner!r} is not in the universe")
    order = {v: i for i, v in enumerate(names)}

    def key(s):
        return sum(1 << order[v] for v in s)

    if isinstance(template, Explicit):
        out = set()
        for s in template.slices:
            unknown = set(s) - set(order)
            if unknown:
                raise FbasError(f"slice of node {owner!r} mentions unknown node {sorted(unknown)[0]!r}")
            if owner not in s:
                raise FbasError(f"node {owner!r} is missing from its own slice {sorted(s)}")
            out.add(frozenset(s))
    elif isinstance(template, Conditions):
        out = _expand_conditions(owner, template, order)
    else:
        raise TypeError(f"not a slice template: {template!r}")
    if not out:
        raise FbasError(f"template for node {owner!r} generates no quorum slices")
    return sorted(out, key=key)


def _expand_conditions(owner, template, order):
    options = []
    for clause in template.clauses:
        unknown = set(clause.pool) - set(order)
        if unknown:
            raise FbasError(f"clause pool of node {owner!r} mentions unknown node {sorted(unknown)[0]!r}")
        if clause.count < 0:
            raise FbasError(f"clause count of node {owner!r} is negative")
        others = sorted(set(clause.pool) - {owner})
        need = clause.count
        if template.owner_included and owner in clause.pool:
            need -= 1
        need = max(need, 0)
        if need > len(others):
            continue  # unsatisfiable clause
        options.append([frozenset(c) for c in combinations(others, need)])

    k = max(template.satisfy, 0)
    if k > len(options):
        return set()
    candidates = set()
    for chosen in combinations(options, k):
        partial = {frozenset([owner])}
        for picks in chosen:
            partial = {s | p for s in partial for p in picks}
        candidates |= partial
    # keep inclusion-minimal sets only
    by_size = sorted(candidates, key=len)
    minimal: list[frozenset[str]] = []
    for s in by_size:
        if not any(m <= s for m in minimal):
            minimal.append(s)
    return set(minimal)


def fbas_from_templates(templates: Mapping[str, SliceTemplate], nodes=None) -> Fbas:
    universe = sorted(set(nodes) if nodes is not None else set(templates))
    mapping = {v: expand_template(v, templates[v], universe) for v in templates}
    return Fbas.from_mapping(mapping, nodes=universe)


# ---------------------------------------------------------------------------
# quorums


def _as_mask(fbas: Fbas, u) -> NodeSet:
    return fbas.mask(u)


def is_quorum(fbas: Fbas, u) -> bool:
    """True iff ``u`` is nonempty and holds a slice of each of its members."""
    u = _as_mask(fbas, u)
    if not u:
        return False
    for i in bits_of(u):
        if not any(s & ~u == 0 for s in fbas.slices[i]):
            return False
    return True


def contract_to_quorum(fbas: Fbas, u) -> NodeSet:
    """Greatest quorum contained in ``u`` (0 if there is none)."""
    u = _as_mask(fbas, u)
    changed = True
    while u and changed:
        changed = False
        for i in bits_of(u):
            if not any(s & ~u == 0 for s in fbas.slices[i]):
                u &= ~(1 << i)
                changed = True
    return u


def delete(fbas: Fbas, d) -> Fbas:
    """The FBAS on ``V \\ D`` whose slices are the old slices minus ``D``."""
    d = _as_mask(fbas, d)
    if d == fbas.full:
        raise FbasError("deleting every node leaves no FBAS")
    if not d:
        return fbas
    keep = [i for i in range(fbas.n) if not d >> i & 1]
    new_pos = {old: new for new, old in enumerate(keep)}

    def compress(mask):
        out = 0
        for i in bits_of(mask & ~d):
            out |= 1 << new_pos[i]
        return out

    nodes = tuple(fbas.nodes[i] for i in keep)
    slices = tuple(tuple(sorted({compress(s) for s in fbas.slices[i]})) for i in keep)
    return Fbas(nodes, slices)


def subset_bits(n: int) -> np.ndarray:
    """Boolean array ``b[i, W]``: node ``i`` belongs to subset ``W``."""
    w = np.arange(1 << n, dtype=np.int64)
    return ((w[None, :] >> np.arange(n, dtype=np.int64)[:, None]) & 1).astype(bool)


def satisfaction_table(fbas: Fbas) -> np.ndarray:
    """Boolean array ``t[i, W]``: some slice of node ``i`` lies inside ``W``."""
    w = np.arange(1 << fbas.n, dtype=np.int64)
    table = np.zeros((fbas.n, 1 << fbas.n), dtype=bool)
    for i, own in enumerate(fbas.slices):
        row = table[i]
        for s in own:
            row |= (w & s) == s
    return table


def quorum_table(fbas: Fbas, sat: np.ndarray | None = None) -> np.ndarray:
    """Boolean array over all ``2^n`` subsets marking the quorums."""
    if sat is None:
        sat = satisfaction_table(fbas)
    ok = np.all(~subset_bits(fbas.n) | sat, axis=0)
    ok[0] = False
    return ok


def subsets_containing_true(table: np.ndarray, n: int) -> np.ndarray:
    """``out[W]`` is true iff ``table[U]`` holds for some ``U`` contained in ``W``."""
    out = table.copy()
    w = np.arange(1 << n, dtype=np.int64)
    for b in range(n):
        out |= out[w & ~(1 << b)]
    return out


def minimal_table(table: np.ndarray, n: int) -> np.ndarray:
    """Inclusion-minimal members of a family of subsets given as a boolean table."""
    below = subsets_containing_true(table, n)
    w = np.arange(1 << n, dtype=np.int64)
    strict = np.zeros_like(table)
    for b in range(n):
        has = (w >> b) & 1 == 1
        strict |= has & below[w & ~(1 << b)]
    return table & ~strict


@dataclass(frozen=True)
class QuorumCatalog:
    """All quorums of an FBAS in increasing bitmask order, plus the minimal ones."""

    nodes: tuple[str, ...]
    quorums: tuple[NodeSet, ...]
    minimal: tuple[NodeSet, ...]

    def __len__(self):
        return len(self.quorums)

    def __iter__(self):
        return iter(self.quorums)

    def __contains__(self, q):
        return q in set(self.quorums)

    def sets(self, minimal_only: bool = False) -> list[list[str]]:
        chosen = self.minimal if minimal_only else self.quorums
        return [[self.nodes[i] for i in bits_of(q)] for q in chosen]

    def membership_counts(self) -> dict[str, int]:
        counts = [0] * len(self.nodes)
        for q in self.quorums:
            for i in bits_of(q):
                counts[i] += 1
        return dict(zip(self.nodes, counts))


def _check_cap(what: str, n: int, cap: int | None, default) -> None:
    cap = default() if cap is None else cap
    if n > cap:
        raise EnumerationLimitError(what, n, cap)


def enumerate_quorums(fbas: Fbas, max_nodes: int | None = None) -> QuorumCatalog:
    """Enumerate all quorums by scanning every nonempty subset."""
    _check_cap("quorum enumeration", fbas.n, max_nodes, config.max_nodes_quorums)
    table = quorum_table(fbas)
    quorums = tuple(int(q) for q in np.flatnonzero(table))
    minimal = tuple(int(q) for q in np.flatnonzero(minimal_table(table, fbas.n)))
    return QuorumCatalog(fbas.nodes, quorums, minimal)


def quorum_intersection_witness(fbas: Fbas, quorums: QuorumCatalog | None = None,
                                max_nodes: int | None = None) -> tuple[NodeSet, NodeSet] | None:
    """A pair of disjoint minimal quorums, or ``None`` if all quorums intersect."""
    if quorums is None:
        quorums = enumerate_quorums(fbas, max_nodes)
    mins = np.array(quorums.minimal, dtype=np.int64)
    if mins.size < 2:
        return None
    disjoint = (mins[:, None] & mins[None, :]) == 0
    hits = np.argwhere(np.triu(disjoint, k=1))
    if hits.size == 0:
        return None
    i, j = hits[0]
    return int(mins[i]), int(mins[j])


def has_quorum_intersection(fbas: Fbas, quorums: QuorumCatalog | None = None,
                            max_nodes: int | None = None) -> bool:
    return quorum_intersection_witness(fbas, quorums, max_nodes) is None
