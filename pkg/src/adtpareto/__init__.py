"""Pareto front analysis of attack-defense trees over semiring domains.

Three interchangeable analyses compute the defender-vs-attacker Pareto
front of an attributed attack-defense tree: exhaustive enumeration
(``naive_pareto``, the oracle), a bottom-up pass over tree-shaped
models (``bu_pareto``), and a decision-diagram pass that also handles
shared subtrees (``bdd_bu``).
"""

from .bdd import (
    BddManager,
    OrderingError,
    bdd_bu,
    bdd_eval,
    compile_adt,
    compile_structure,
    defense_first_order,
)
from .bench import BenchRecord, aggregate_medians, run_suite
from .bu import GateOps, TreeShapeError, bu_pareto, gate_operators
from .gen import GenConfig, SplitMix64, random_aadt
from .model import (
    Aadt,
    Actor,
    Adt,
    AdtFormatError,
    AdtNode,
    GateKind,
    load_aadt,
    parse_aadt,
    save_aadt,
    serialize_aadt,
)
from .naive import (
    DEFAULT_ENUMERATION_CAP,
    NO_ATTACK,
    EnumerationCapError,
    feasible_events,
    naive_pareto,
    optimal_response,
)
from .semiring import (
    BUILTIN_DOMAINS,
    Domain,
    Front,
    SemiringOp,
    builtin_domain,
    combine_fronts,
    dominates,
    front_to_csv,
    front_to_json,
    metric_value,
    pareto_min,
)

__version__ = "0.1.0"

__all__ = [
    "Aadt",
    "Actor",
    "Adt",
    "AdtFormatError",
    "AdtNode",
    "BUILTIN_DOMAINS",
    "BddManager",
    "BenchRecord",
    "DEFAULT_ENUMERATION_CAP",
    "Domain",
    "EnumerationCapError",
    "Front",
    "GateKind",
    "GateOps",
    "GenConfig",
    "NO_ATTACK",
    "OrderingError",
    "SemiringOp",
    "SplitMix64",
    "TreeShapeError",
    "aggregate_medians",
    "bdd_bu",
    "bdd_eval",
    "bu_pareto",
    "builtin_domain",
    "combine_fronts",
    "compile_adt",
    "compile_structure",
    "defense_first_order",
    "dominates",
    "feasible_events",
    "front_to_csv",
    "front_to_json",
    "gate_operators",
    "load_aadt",
    "metric_value",
    "naive_pareto",
    "optimal_response",
    "pareto_min",
    "parse_aadt",
    "random_aadt",
    "run_suite",
    "save_aadt",
    "serialize_aadt",
    "__version__",
]
