"""Reading and writing FBAS documents.

Format version 1 is a JSON object::

    {
      "format": 1,
      "nodes": ["a1", "a2", ...],
      "slices": {
        "a1": [["a1", "a2"], ["a1", "a3"]],
        "b1": {"satisfy": 2, "owner_included": false,
               "clauses": [{"pool": ["a1", "a2", "a3"], "count": 2}, ...]}
      }
    }

A list of lists gives the slices explicitly; each must contain its owner.
An object describes all inclusion-minimal sets that meet
at least ``satisfy`` of the clauses, where a clause holds when the set has
``count`` nodes from ``pool``. With ``owner_included`` the owner counts
towards its own pool.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .fbas import Clause, Conditions, Explicit, Fbas, FbasError, fbas_from_templates

FORMAT_VERSION = 1


class DocumentError(FbasError):
    pass


def _template(owner, spec):
    if isinstance(spec, list):
        if not all(isinstance(s, list) and all(isinstance(v, str) for v in s) for s in spec):
            raise DocumentError(f"slices of node {owner!r} must be lists of node ids")
        return Explicit(tuple(frozenset(s) for s in spec))
    if isinstance(spec, dict):
        unknown = set(spec) - {"satisfy", "clauses", "owner_included"}
        if unknown:
            raise DocumentError(f"unknown key {sorted(unknown)[0]!r} in template of node {owner!r}")
        try:
            clauses = tuple(
                Clause(frozenset(c["pool"]), int(c["count"])) for c in spec["clauses"]
            )
            satisfy = int(spec.get("satisfy", len(clauses)))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed template for node {owner!r}: {exc}") from None
        return Conditions(clauses, satisfy, bool(spec.get("owner_included", False)))
    raise DocumentError(f"slices of node {owner!r} must be a list or a template object")


def parse_fbas(doc) -> Fbas:
    """Build a validated FBAS from a decoded document."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = doc.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format version {version!r}")
    slices = doc.get("slices")
    if not isinstance(slices, dict):
        raise DocumentError('document needs a "slices" object')
    nodes = doc.get("nodes", list(slices))
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise DocumentError('"nodes" must be a list of strings')
    if len(set(nodes)) != len(nodes):
        raise DocumentError('"nodes" contains duplicates')
    for v in slices:
        if v not in nodes:
            raise DocumentError(f"slices given for unknown node {v!r}")
    for v in nodes:
        if v not in slices:
            raise DocumentError(f"node {v!r} has no quorum slices")
    templates = {v: _template(v, slices[v]) for v in nodes}
    return fbas_from_templates(templates, nodes=nodes)


def loads_fbas(text: str) -> Fbas:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise DocumentError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}\n  {context}"
        ) from None
    return parse_fbas(doc)


def load_fbas(path) -> Fbas:
    return loads_fbas(Path(path).read_text(encoding="utf-8"))


def dump_fbas(fbas: Fbas) -> dict:
    """Explicit-slice document for ``fbas``."""
    return {"format": FORMAT_VERSION, "nodes": list(fbas.nodes), "slices": fbas.to_mapping()}


def bundled_examples() -> list[str]:
    data = resources.files(__package__) / "data"
    return sorted(p.name[:-5] for p in data.iterdir() if p.name.endswith(".json"))


def bundled_path(name: str):
    return resources.files(__package__) / "data" / f"{name}.json"


def load_bundled(name: str) -> Fbas:
    path = bundled_path(name)
    if not path.is_file():
        raise DocumentError(f"no bundled example named {name!r}")
    return loads_fbas(path.read_text(encoding="utf-8"))
