"""Exact gluing of local analytic data on disjoint p-adic balls.

Everything is computed over K = Q(sqrt p) with exact rational arithmetic:
no floats, no approximations.  The library plans and builds a single
rational map agreeing with prescribed local maps on disjoint closed balls
up to a chosen tolerance, certifies the construction, and analyzes the
fixed points of the result (classification, Hensel refinement, orbits).
"""

from .algebra import (
    POLE,
    NewtonPolygon,
    Poly,
    RationalMap,
    count_roots_with_min_valuation,
    gauss_norm_exp,
    newton_polygon,
    poly_gcd,
)
from .dynamics import (
    ATTRACTING,
    INCONCLUSIVE,
    INDIFFERENT,
    REPELLING,
    CensusReport,
    DiskBehavior,
    FixedPointCensus,
    Multiplier,
    OrbitStep,
    Witness,
    classify_disk,
    epsilon_for_census,
    hensel_fixed_point,
    multiplier,
    orbit,
    suggest_witness,
    verify_census,
)
from .errors import (
    HenselConditionError,
    HypothesisViolation,
    LemmaInapplicable,
    PadicGlueError,
    PoleInBallError,
    SpecFormatError,
)
from .field import FieldConfig, KElement, ValExp, is_prime, reduce_mod, uniformizer_power
from .geometry import (
    Ball,
    Radius,
    count_roots_in_ball,
    distance_exp,
    image_of_ball,
    pairwise_deltas,
    pole_free_on_ball,
    sample_points,
    sup_norm_exp_on_ball,
    wdeg,
)
from .gluing import (
    BallCheck,
    Certificate,
    GluingPlan,
    LocalModel,
    build_F,
    build_h,
    certify_theorem1,
    check_c3_hypotheses,
    check_monotonicity,
    check_subdisk_transfer,
    plan_gluing,
    validate_plan,
)

__version__ = "0.1.0"

__all__ = [
    "ATTRACTING",
    "Ball",
    "BallCheck",
    "Certificate",
    "CensusReport",
    "DiskBehavior",
    "FieldConfig",
    "FixedPointCensus",
    "GluingPlan",
    "HenselConditionError",
    "HypothesisViolation",
    "INCONCLUSIVE",
    "INDIFFERENT",
    "KElement",
    "LemmaInapplicable",
    "LocalModel",
    "Multiplier",
    "NewtonPolygon",
    "OrbitStep",
    "POLE",
    "PadicGlueError",
    "Poly",
    "PoleInBallError",
    "REPELLING",
    "Radius",
    "RationalMap",
    "SpecFormatError",
    "ValExp",
    "Witness",
    "build_F",
    "build_h",
    "certify_theorem1",
    "check_c3_hypotheses",
    "check_monotonicity",
    "check_subdisk_transfer",
    "classify_disk",
    "count_roots_in_ball",
    "count_roots_with_min_valuation",
    "distance_exp",
    "epsilon_for_census",
    "gauss_norm_exp",
    "hensel_fixed_point",
    "image_of_ball",
    "is_prime",
    "multiplier",
    "newton_polygon",
    "orbit",
    "pairwise_deltas",
    "plan_gluing",
    "pole_free_on_ball",
    "poly_gcd",
    "reduce_mod",
    "sample_points",
    "sup_norm_exp_on_ball",
    "suggest_witness",
    "uniformizer_power",
    "validate_plan",
    "verify_census",
    "wdeg",
]
