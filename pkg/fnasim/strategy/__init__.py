"""Access strategies: beliefs, homogeneous analysis and heterogeneous selection."""

from .beliefs import (
    EPSILON,
    ExclusionEstimate,
    IndicatorAccuracy,
    PositiveRateEstimator,
    estimate_exclusion,
    estimate_hit_ratio,
    exclusion_for_indication,
    exclusion_probs,
    is_invertible,
    is_sufficiently_accurate,
    positive_prob,
)
from .hetero import (
    SOLVERS,
    AccessDecision,
    CacheProfile,
    RequestContext,
    pgm_fna_decide,
    pgm_fno_decide,
    reduce_and_solve,
    service_cost,
    solve_fno_exhaustive,
    solve_fno_greedy,
)
from .homo import (
    AccessCounts,
    HomoParams,
    cost_homo,
    ecm_fna,
    ecm_fno,
    expected_cost,
    pif_cost,
    prob_positive_count,
)

__all__ = [
    "EPSILON",
    "ExclusionEstimate",
    "IndicatorAccuracy",
    "PositiveRateEstimator",
    "estimate_exclusion",
    "estimate_hit_ratio",
    "exclusion_for_indication",
    "exclusion_probs",
    "is_invertible",
    "is_sufficiently_accurate",
    "positive_prob",
    "SOLVERS",
    "AccessDecision",
    "CacheProfile",
    "RequestContext",
    "pgm_fna_decide",
    "pgm_fno_decide",
    "reduce_and_solve",
    "service_cost",
    "solve_fno_exhaustive",
    "solve_fno_greedy",
    "AccessCounts",
    "HomoParams",
    "cost_homo",
    "ecm_fna",
    "ecm_fno",
    "expected_cost",
    "pif_cost",
    "prob_positive_count",
]
