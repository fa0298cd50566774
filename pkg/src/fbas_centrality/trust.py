"""Trust graph of an FBAS, its strongly connected components and reachability."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fbas import Fbas, NodeSet, bits_of


@dataclass(frozen=True)
class TrustGraph:
    """Directed graph with an edge ``u -> v`` whenever ``v`` is in a slice of ``u``.

    ``succ[i]`` is the out-neighbour bitmask of node ``i``. Self-loops are kept.
    """

    nodes: tuple[str, ...]
    succ: tuple[NodeSet, ...]

    @property
    def n(self):
        return len(self.nodes)

    @cached_property
    def pred(self) -> tuple[NodeSet, ...]:
        pred = [0] * self.n
        for u, out in enumerate(self.succ):
            for v in bits_of(out):
                pred[v] |= 1 << u
        return tuple(pred)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return [(self.nodes[u], self.nodes[v]) for u in range(self.n) for v in bits_of(self.succ[u])]

    def to_dot(self, name: str = "trust") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.nodes:
            lines.append(f'  "{v}";')
        for u, v in self.edges:
            if u != v:
                lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_trust_graph(fbas: Fbas) -> TrustGraph:
    succ = []
    for own in fbas.slices:
        out = 0
        for s in own:
            out |= s
        succ.append(out)
    return TrustGraph(fbas.nodes, tuple(succ))


def adjacency_matrix(graph: TrustGraph, self_loops: bool = False) -> np.ndarray:
    a = np.zeros((graph.n, graph.n))
    for u, out in enumerate(graph.succ):
        for v in bits_of(out):
            a[u, v] = 1.0
    if not self_loops:
        np.fill_diagonal(a, 0.0)
    return a


def graph_from_matrix(nodes, m: np.ndarray) -> TrustGraph:
    """Graph of the nonzero pattern of a square matrix."""
    succ = []
    for row in np.asarray(m):
        out = 0
        for j in np.flatnonzero(row):
            out |= 1 << int(j)
        succ.append(out)
    return TrustGraph(tuple(nodes), tuple(succ))


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition with the condensation reachability relation.

    ``components`` are bitmasks ordered by their smallest node index.
    ``reach[c]`` is the bitmask of component ids reachable from ``c``
    (including ``c``). ``greatest`` is ``None`` when no component is
    reachable from all the others.
    """

    nodes: tuple[str, ...]
    components: tuple[NodeSet, ...]
    reach: tuple[int, ...]
    maximal: tuple[int, ...]
    greatest: int | None

    def component_of(self, i: int) -> int:
        for c, comp in enumerate(self.components):
            if comp >> i & 1:
                return c
        raise IndexError(i)

    def component_ids(self, c: int) -> list[str]:
        return [self.nodes[i] for i in bits_of(self.components[c])]

    @property
    def greatest_nodes(self) -> NodeSet | None:
        return None if self.greatest is None else self.components[self.greatest]


def _tarjan(succ: tuple[int, ...]) -> list[int]:
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[int] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(list(bits_of(succ[root]))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(list(bits_of(succ[w])))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = 0
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp |= 1 << w
                    if w == v:
                        break
                comps.append(comp)
    return comps


def scc_decomposition(graph: TrustGraph) -> SccDecomposition:
    comps = sorted(_tarjan(graph.succ), key=lambda c: (c & -c))
    owner = [0] * graph.n
    for c, comp in enumerate(comps):
        for i in bits_of(comp):
            owner[i] = c
    k = len(comps)
    direct = [0] * k
    for u in range(graph.n):
        for v in bits_of(graph.succ[u]):
            direct[owner[u]] |= 1 << owner[v]
    reach = []
    for c in range(k):
        seen = 1 << c
        frontier = direct[c] & ~seen
        while frontier:
            seen |= frontier
            nxt = 0
            for d in bits_of(frontier):
                nxt |= direct[d]
            frontier = nxt & ~seen
        reach.append(seen)
    maximal = tuple(c for c in range(k) if reach[c] == 1 << c)
    greatest = None
    for c in maximal:
        if all(reach[d] >> c & 1 for d in range(k)):
            greatest = c
            break
    return SccDecomposition(graph.nodes, tuple(comps), tuple(reach), maximal, greatest)


def _closure(start: int, adj: tuple[int, ...]) -> NodeSet:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits_of(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def reachable_set(graph: TrustGraph, v: int) -> NodeSet:
    """Nodes reachable from node index ``v``, including ``v`` itself."""
    return _closure(v, graph.succ)


def reaching_set(graph: TrustGraph, v: int) -> NodeSet:
    """Nodes from which node index ``v`` is reachable, including ``v`` itself."""
    return _closure(v, graph.pred)


def is_strongly_connected(graph: TrustGraph) -> bool:
    return graph.n > 0 and reachable_set(graph, 0) == reaching_set(graph, 0) == (1 << graph.n) - 1
