"""Analysis settings and enumeration limits.

The two node limits guard the exhaustive subset scans. They can be raised
per call, through the CLI flags, or with the environment variables
``FBAS_MAX_NODES_QUORUMS`` and ``FBAS_MAX_NODES_INTACTNESS``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

DEFAULT_MAX_NODES_QUORUMS = 20
DEFAULT_MAX_NODES_INTACTNESS = 12

ENV_MAX_NODES_QUORUMS = "FBAS_MAX_NODES_QUORUMS"
ENV_MAX_NODES_INTACTNESS = "FBAS_MAX_NODES_INTACTNESS"

# numerical kernel tolerances
POWER_TOL = 1e-13
POWER_MAX_ITER = 200_000
JACOBI_TOL = 1e-12
NORM_REL_TOL = 1e-10
PIVOT_TOL = 1e-14
TIE_TOL = 1e-9

MEASURES = ("te", "ts", "qe", "qs", "il", "hl")
OPTIONAL_MEASURES = ("ie",)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def max_nodes_quorums() -> int:
    return _env_int(ENV_MAX_NODES_QUORUMS, DEFAULT_MAX_NODES_QUORUMS)


def max_nodes_intactness() -> int:
    return _env_int(ENV_MAX_NODES_INTACTNESS, DEFAULT_MAX_NODES_INTACTNESS)


@dataclass(frozen=True)
class AnalysisConfig:
    """Parameters for a centrality report.

    ``base`` is either ``None`` (all-ones base centrality) or a mapping from
    node id to a nonnegative value; nodes missing from the mapping get 0.
    """

    measures: tuple[str, ...] = MEASURES
    scope: str = "whole"
    weights: str = "exp"
    mu_factor: float = 0.5
    base: dict[str, float] | None = None
    max_nodes_quorums: int = field(default_factory=max_nodes_quorums)
    max_nodes_intactness: int = field(default_factory=max_nodes_intactness)
    output_format: str = "table"
    tie_tol: float = TIE_TOL

    def __post_init__(self):
        if not 0.0 < self.mu_factor < 1.0:
            raise ValueError(f"mu_factor must lie in (0, 1), got {self.mu_factor}")
        if self.max_nodes_quorums <= 0 or self.max_nodes_intactness <= 0:
            raise ValueError("enumeration caps must be positive")
        if self.scope not in ("whole", "greatest_scc"):
            raise ValueError(f"unknown scope {self.scope!r}")
        if self.weights not in ("exp", "inv"):
            raise ValueError(f"unknown weight scheme {self.weights!r}")
        if self.output_format not in ("table", "csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.tie_tol < 0:
            raise ValueError("tie_tol must be nonnegative")
        unknown = set(self.measures) - set(MEASURES) - set(OPTIONAL_MEASURES)
        if unknown:
            raise ValueError(f"unknown measures: {', '.join(sorted(unknown))}")
