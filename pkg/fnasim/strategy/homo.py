"""Homogeneous selection: caches share cost, hit ratio and indicator accuracy.

The choice reduces to two counts: how many positive-indication caches (r1) and
how many negative-indication caches (r0) to access.
"""

from dataclasses import dataclass
from typing import Callable

from scipy.stats import binom

from ..errors import InvalidArgumentError
from .beliefs import IndicatorAccuracy, exclusion_probs, positive_prob


@dataclass(frozen=True)
class HomoParams:
    total_caches: int
    positive_count: int
    mr_pos: float
    mr_neg: float
    miss_penalty: float

    def __post_init__(self):
        if not 0 <= self.positive_count <= self.total_caches:
            raise InvalidArgumentError(
                f"positive_count {self.positive_count} outside [0, {self.total_caches}]"
            )
        if self.miss_penalty < 1:
            raise InvalidArgumentError(f"miss_penalty must be >= 1, got {self.miss_penalty}")


@dataclass(frozen=True)
class AccessCounts:
    r0: int
    r1: int


Policy = Callable[[HomoParams], AccessCounts]


def cost_homo(counts: AccessCounts, params: HomoParams) -> float:
    """r0 + r1 + p * mr_neg^r0 * mr_pos^r1."""
    negatives = params.total_caches - params.positive_count
    if not (0 <= counts.r1 <= params.positive_count and 0 <= counts.r0 <= negatives):
        raise InvalidArgumentError(f"{counts} out of range for {params}")
    return (
        counts.r0
        + counts.r1
        + params.miss_penalty * params.mr_neg ** counts.r0 * params.mr_pos ** counts.r1
    )


def _max_argmin(candidates, cost) -> int:
    # Largest candidate among those attaining the minimum
    best, best_cost = None, None
    for r in candidates:
        c = cost(r)
        if best_cost is None or c <= best_cost:
            best, best_cost = r, c
    return best


def ecm_fno(params: HomoParams) -> AccessCounts:
    """Access the best number of positive-indication caches and nothing else."""
    r1 = _max_argmin(
        range(params.positive_count + 1),
        lambda r: cost_homo(AccessCounts(0, r), params),
    )
    return AccessCounts(r0=0, r1=r1)


def ecm_fna(params: HomoParams) -> AccessCounts:
    """Expected-cost-minimizing (r0, r1), optimal when the indicators are sufficiently accurate.

    Negative-indication caches are worth considering only if the positive
    ones leave an expected miss cost above one access.
    """
    r1 = ecm_fno(params).r1
    if params.miss_penalty * params.mr_pos ** r1 <= 1:
        return AccessCounts(r0=0, r1=r1)
    r0 = _max_argmin(
        range(params.total_caches - params.positive_count + 1),
        lambda r: cost_homo(AccessCounts(r, r1), params),
    )
    return AccessCounts(r0=r0, r1=r1)


POLICIES = {"fna": ecm_fna, "fno": ecm_fno}


def prob_positive_count(num_caches: int, q: float, j: int) -> float:
    """Probability that exactly ``j`` of ``num_caches`` indicators are positive."""
    if not 0 <= j <= num_caches:
        raise InvalidArgumentError(f"j={j} outside [0, {num_caches}]")
    return float(binom.pmf(j, num_caches, q))


def expected_cost(
    policy: str,
    h: float,
    acc: IndicatorAccuracy,
    num_caches: int,
    miss_penalty: float,
) -> float:
    """Expected service cost of ``policy`` ("fna" or "fno") over the positive-count distribution."""
    try:
        decide = POLICIES[policy]
    except KeyError:
        raise InvalidArgumentError(f"unknown homogeneous policy {policy!r}") from None

    q = positive_prob(h, acc)
    mr_pos, mr_neg = exclusion_probs(h, acc)
    total = 0.0
    for j in range(num_caches + 1):
        params = HomoParams(num_caches, j, mr_pos, mr_neg, miss_penalty)
        total += prob_positive_count(num_caches, q, j) * cost_homo(decide(params), params)
    return total


def pif_cost(h: float, num_caches: int, miss_penalty: float) -> float:
    """Expected cost with perfect indicators: 1 + (p - 1)(1 - h)^N."""
    return 1.0 + (miss_penalty - 1.0) * (1.0 - h) ** num_caches
