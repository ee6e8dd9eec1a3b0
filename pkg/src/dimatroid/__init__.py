"""Matroids, dimatroids, cover invariants and almost-fair representation."""

from .covers import (
    CoverReport,
    FractionalCover,
    beta_exact,
    beta_matroid,
    beta_star,
    beta_star_lp,
    complex_zeta,
    minimal_fractional_cover,
    zeta,
    zeta_truncated,
)
from .errors import (
    DimatroidError,
    InvariantViolation,
    LoopError,
    PreconditionError,
    SizeCapExceeded,
    SpecError,
    UniverseMismatch,
)
from .fair import (
    FairnessReport,
    FairRepTrace,
    Partition,
    delta,
    fair_rep_matroid,
    fair_rep_two_blocks,
    fairness_report,
)
from .intersection import (
    Dimatroid,
    ExchangeWalk,
    brute_force_max_common,
    exchange_walk,
    is_common_independent,
    max_common_independent,
    max_marked_common_independent,
)
from .lp import CoveringLP, LPSolution, solve_covering
from .matroid import (
    BinaryMatroid,
    DualMatroid,
    ExplicitMatroid,
    GraphicMatroid,
    Matroid,
    PartitionMatroid,
    RestrictedMatroid,
    TruncatedMatroid,
    UniformMatroid,
    complete_graph_edges,
    dual,
    free_matroid,
    from_spec,
    fundamental_circuit,
    restrict,
    truncate,
    verify_matroid_axioms,
)
from .sets import ElementSet

__version__ = "0.1.0"

__all__ = [
    "beta_exact",
    "beta_matroid",
    "beta_star",
    "beta_star_lp",
    "BinaryMatroid",
    "brute_force_max_common",
    "complete_graph_edges",
    "complex_zeta",
    "CoveringLP",
    "CoverReport",
    "delta",
    "Dimatroid",
    "DimatroidError",
    "dual",
    "DualMatroid",
    "ElementSet",
    "exchange_walk",
    "ExchangeWalk",
    "ExplicitMatroid",
    "fair_rep_matroid",
    "fair_rep_two_blocks",
    "fairness_report",
    "FairnessReport",
    "FairRepTrace",
    "FractionalCover",
    "free_matroid",
    "from_spec",
    "fundamental_circuit",
    "GraphicMatroid",
    "InvariantViolation",
    "is_common_independent",
    "LoopError",
    "LPSolution",
    "Matroid",
    "max_common_independent",
    "max_marked_common_independent",
    "minimal_fractional_cover",
    "Partition",
    "PartitionMatroid",
    "PreconditionError",
    "restrict",
    "RestrictedMatroid",
    "SizeCapExceeded",
    "solve_covering",
    "SpecError",
    "truncate",
    "TruncatedMatroid",
    "UniformMatroid",
    "UniverseMismatch",
    "verify_matroid_axioms",
    "zeta",
    "zeta_truncated",
]
