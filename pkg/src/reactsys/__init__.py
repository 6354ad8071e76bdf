"""Reaction systems: dynamics, polynomial procedures, hardness gadgets and SAT/QBF encodings."""

from .core import (
    EntityTable,
    Reaction,
    ReactionSystem,
    ResourceClass,
    classify,
    complement_conjugate,
    count_evaluations,
    enabled,
    normalize_singleton_products,
    result,
    result_single,
)
from .dynamics import (
    FixedPointReport,
    OrbitReport,
    SharedVerdict,
    enumerate_fixed_points,
    is_attractor,
    is_fixed_point,
    local_attractor_check,
    orbit,
    preimages,
    result_table,
    shared_analysis,
    transition_graph,
)
from .errors import (
    CapabilityError,
    ClassMismatchError,
    EmptyProductError,
    FormulaError,
    ParseError,
    PreconditionError,
    ReactsysError,
    RecheckError,
    SolverError,
    UsageError,
)
from .formula import Formula
from .polytime import (
    BijectivityVerdict,
    additive_reduction,
    bijective_inhibitorless,
    bijective_reactantless,
    gfp_monotone,
    is_empty_function,
    lfp_monotone,
    pointwise_leq_antitone,
    pointwise_leq_monotone,
    res_eq_inhibitorless,
    res_eq_reactantless,
)

__version__ = "0.1.0"

__all__ = [
    "additive_reduction",
    "bijective_inhibitorless",
    "bijective_reactantless",
    "BijectivityVerdict",
    "CapabilityError",
    "classify",
    "ClassMismatchError",
    "complement_conjugate",
    "count_evaluations",
    "EmptyProductError",
    "enabled",
    "EntityTable",
    "enumerate_fixed_points",
    "FixedPointReport",
    "Formula",
    "FormulaError",
    "gfp_monotone",
    "is_attractor",
    "is_empty_function",
    "is_fixed_point",
    "lfp_monotone",
    "local_attractor_check",
    "normalize_singleton_products",
    "orbit",
    "OrbitReport",
    "ParseError",
    "pointwise_leq_antitone",
    "pointwise_leq_monotone",
    "PreconditionError",
    "preimages",
    "Reaction",
    "ReactionSystem",
    "ReactsysError",
    "RecheckError",
    "res_eq_inhibitorless",
    "res_eq_reactantless",
    "ResourceClass",
    "result",
    "result_single",
    "result_table",
    "shared_analysis",
    "SharedVerdict",
    "SolverError",
    "transition_graph",
    "UsageError",
]
