"""Brute-force reference implementations written straight from the definitions.

These work on ``{node: [set, ...]}`` mappings with Python sets and share no
code with the package.
"""

from itertools import combinations


def all_subsets(nodes):
    nodes = sorted(nodes)
    for k in range(len(nodes) + 1):
        for combo in combinations(nodes, k):
            yield frozenset(combo)


def is_quorum(slices, u):
    return bool(u) and all(any(set(s) <= u for s in slices[v]) for v in u)


def quorums(slices):
    return [u for u in all_subsets(slices) if is_quorum(slices, u)]


def has_intersection(slices):
    qs = quorums(slices)
    return all(p & q for p, q in combinations(qs, 2))


def deleted(slices, d):
    return {v: [frozenset(s) - d for s in ss] for v, ss in slices.items() if v not in d}


def is_dset(slices, d):
    v = frozenset(slices)
    if d == v:
        return True
    return is_quorum(slices, v - d) and has_intersection(deleted(slices, d))


def dsets(slices):
    return [d for d in all_subsets(slices) if is_dset(slices, d)]


def befouled(slices, i, ds=None):
    """Nodes outside ``i`` with no DSet ``D`` such that ``i <= D`` and the node is outside ``D``."""
    ds = dsets(slices) if ds is None else ds
    v = frozenset(slices)
    return frozenset(x for x in v - i if not any(i <= d and x not in d for d in ds))


def successors(slices):
    return {v: set().union(*map(set, ss)) - {v} for v, ss in slices.items()}


def reach(slices, v):
    succ = successors(slices)
    seen, todo = {v}, [v]
    while todo:
        for w in succ[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(seen)


def sccs(slices):
    r = {v: reach(slices, v) for v in slices}
    comps = {frozenset(w for w in slices if v in r[w] and w in r[v]) for v in slices}
    return comps, r


def greatest_scc(slices):
    comps, r = sccs(slices)
    for c in comps:
        rep = next(iter(c))
        if all(rep in r[v] for v in slices):
            return c
    return None
