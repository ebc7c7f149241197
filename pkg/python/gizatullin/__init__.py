"""
gizatullin - Exact combinatorics of Gizatullin surfaces

Zigzag normal forms, extended divisors with feathers, configuration
invariants, orbit decompositions of Aut(V), the shape of the fibration
graph and power-series checks of the lifting lemmas. All arithmetic is
exact (integers, ``Fraction`` and sympy rationals).

Example:
    >>> import gizatullin
    >>> gizatullin.reverse_chain([0, -1, -2, -3, -4]).weights
    (0, -1, -4, -3, -2)
    >>> sorted(gizatullin.exceptional_components((-2, -3, -1, -2, -3)))
    [3, 5]
    >>> gizatullin.toric_report(8, 3).summary()
    "e' = 3; shape: Loop; Aut = A ⋆_{A∩J} J"
"""

from .autgroup import (
    AmalgamPresentation,
    BiratWord,
    Fib,
    GraphShape,
    Rev,
    Shape,
    ToricReport,
    amalgam_presentation,
    aut_generated_by_fibrations,
    fibration_graph_shape,
    presentation_for_shape,
    reduce_birational_word,
    toric_report,
)
from .config import Settings
from .configinv import (
    CStarPoint,
    PointSet,
    SymmetryData,
    plus_class_equal,
    q_self_reversed,
    self_reversal_witness,
    star_class_equal,
    symmetry_group,
)
from .document import emit_surface, parse_surface
from .dot import export_dot
from .errors import (
    ConditionStarError,
    GizatullinError,
    InvariantViolation,
    NonSmoothError,
    StandardizationError,
    SurfaceSyntaxError,
    UnknownShapeError,
)
from .extdiv import (
    Diagnostic,
    ExtendedDivisor,
    Feather,
    MatchingAtom,
    Tau,
    classify_components,
    exceptional_set,
    is_contractible,
    matching_pairs,
    reversed_divisor_data,
    reversed_exceptional_set,
    validate,
)
from .orbits import (
    OrbitReport,
    Verdict,
    big_orbit_complement_bound,
    feathers_on_exceptional_in_O,
    orbit_decomposition,
)
from .serieslift import (
    LiftForm,
    Lifter,
    TriangularMap,
    TruncatedSeries2,
    component_scaling_exponents,
    correspondence_check,
    lift_word_exponents,
    lift_word_series,
    verify_claim3,
)
from .sweep import enumerate_sweep
from .zigzag import (
    BlowupWord,
    HJFraction,
    Standardizer,
    WeightedChain,
    elementary_shift,
    exceptional_components,
    generate_chain,
    hj_expand,
    hj_value,
    recover_words,
    reverse_chain,
    standardize,
)

__version__ = "0.1.0"

__all__ = [
    # Chains and words
    "WeightedChain",
    "Standardizer",
    "standardize",
    "elementary_shift",
    "reverse_chain",
    "HJFraction",
    "hj_expand",
    "hj_value",
    "BlowupWord",
    "generate_chain",
    "recover_words",
    "exceptional_components",
    # Extended divisors
    "ExtendedDivisor",
    "Feather",
    "Diagnostic",
    "Tau",
    "MatchingAtom",
    "validate",
    "is_contractible",
    "classify_components",
    "reversed_divisor_data",
    "exceptional_set",
    "reversed_exceptional_set",
    "matching_pairs",
    # Configuration invariant
    "CStarPoint",
    "PointSet",
    "SymmetryData",
    "symmetry_group",
    "star_class_equal",
    "plus_class_equal",
    "self_reversal_witness",
    "q_self_reversed",
    # Orbits
    "OrbitReport",
    "Verdict",
    "orbit_decomposition",
    "big_orbit_complement_bound",
    "feathers_on_exceptional_in_O",
    # Automorphism groups
    "Shape",
    "GraphShape",
    "AmalgamPresentation",
    "Rev",
    "Fib",
    "BiratWord",
    "ToricReport",
    "fibration_graph_shape",
    "aut_generated_by_fibrations",
    "amalgam_presentation",
    "presentation_for_shape",
    "reduce_birational_word",
    "toric_report",
    # Series lifting
    "TruncatedSeries2",
    "TriangularMap",
    "LiftForm",
    "Lifter",
    "lift_word_series",
    "lift_word_exponents",
    "component_scaling_exponents",
    "verify_claim3",
    "correspondence_check",
    # Documents and sweeps
    "parse_surface",
    "emit_surface",
    "export_dot",
    "enumerate_sweep",
    "Settings",
    # Errors
    "GizatullinError",
    "StandardizationError",
    "ConditionStarError",
    "NonSmoothError",
    "InvariantViolation",
    "UnknownShapeError",
    "SurfaceSyntaxError",
    # Version
    "__version__",
]
