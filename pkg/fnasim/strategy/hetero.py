"""Heterogeneous selection: which subset of caches to access for one request."""

from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import InvalidArgumentError, SizeLimitError
from .beliefs import (
    EPSILON,
    ExclusionEstimate,
    IndicatorAccuracy,
    estimate_exclusion,
    exclusion_for_indication,
    is_invertible,
)

EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class CacheProfile:
    """A candidate cache: its access cost and the probability it does not hold the item."""

    cache_id: int
    access_cost: float
    exclusion: float

    def __post_init__(self):
        if self.access_cost < 1:
            raise InvalidArgumentError(
                f"cache {self.cache_id}: access cost must be >= 1, got {self.access_cost}"
            )
        if not 0.0 <= self.exclusion <= 1.0:
            raise InvalidArgumentError(
                f"cache {self.cache_id}: exclusion must be a probability, got {self.exclusion}"
            )


@dataclass(frozen=True)
class AccessDecision:
    """Caches to access in parallel and the expected cost of doing so."""

    selected: FrozenSet[int]
    predicted_cost: float

    @property
    def ordered(self) -> Tuple[int, ...]:
        return tuple(sorted(self.selected))


FnoSolver = Callable[[Sequence[CacheProfile], float], AccessDecision]


def service_cost(selected, profiles: Sequence[CacheProfile], miss_penalty: float) -> float:
    """Sum of access costs in ``selected`` plus p times the product of their exclusions."""
    by_id = {pr.cache_id: pr for pr in profiles}
    access, miss = 0.0, 1.0
    for j in sorted(selected):
        try:
            pr = by_id[j]
        except KeyError:
            raise InvalidArgumentError(f"unknown cache id {j}") from None
        access += pr.access_cost
        miss *= pr.exclusion
    return access + miss_penalty * miss


def solve_fno_exhaustive(profiles: Sequence[CacheProfile], miss_penalty: float) -> AccessDecision:
    """Exact minimizer of :func:`service_cost` by enumerating every subset.

    Ties go to the smaller access cost, then to the lexicographically smallest ids.
    """
    profiles = sorted(profiles, key=lambda pr: pr.cache_id)
    if len(profiles) > EXHAUSTIVE_LIMIT:
        raise SizeLimitError(
            f"{len(profiles)} caches exceed the exhaustive limit of {EXHAUSTIVE_LIMIT}; "
            f"use the greedy solver"
        )

    # Subset i holds profile b iff bit b of i is set
    access = [0.0]
    miss = [1.0]
    for pr in profiles:
        access += [a + pr.access_cost for a in access]
        miss += [m * pr.exclusion for m in miss]

    totals = [a + miss_penalty * m for a, m in zip(access, miss)]
    best = min(totals)
    tied = [
        (access[mask], tuple(pr.cache_id for b, pr in enumerate(profiles) if mask >> b & 1))
        for mask, total in enumerate(totals)
        if total == best
    ]
    selected = frozenset(min(tied)[1])
    return AccessDecision(selected, service_cost(selected, profiles, miss_penalty))


def solve_fno_greedy(profiles: Sequence[CacheProfile], miss_penalty: float) -> AccessDecision:
    """Add the cache with the largest cost reduction until none reduces the cost."""
    remaining = sorted(profiles, key=lambda pr: (pr.access_cost, pr.cache_id))
    selected = set()
    miss = 1.0
    while remaining:
        best, best_gain = None, 0.0
        for pr in remaining:
            gain = miss_penalty * miss * (1.0 - pr.exclusion) - pr.access_cost
            if gain > best_gain:
                best, best_gain = pr, gain
        if best is None:
            break
        selected.add(best.cache_id)
        miss *= best.exclusion
        remaining.remove(best)

    selected = frozenset(selected)
    return AccessDecision(selected, service_cost(selected, profiles, miss_penalty))


def solve_fno_auto(profiles: Sequence[CacheProfile], miss_penalty: float) -> AccessDecision:
    if len(profiles) <= EXHAUSTIVE_LIMIT:
        return solve_fno_exhaustive(profiles, miss_penalty)
    return solve_fno_greedy(profiles, miss_penalty)


SOLVERS = {
    "auto": solve_fno_auto,
    "exhaustive": solve_fno_exhaustive,
    "greedy": solve_fno_greedy,
}


def reduce_and_solve(
    indications: Sequence[int],
    estimates: Sequence[ExclusionEstimate],
    costs: Sequence[float],
    miss_penalty: float,
    solver: FnoSolver = solve_fno_exhaustive,
) -> AccessDecision:
    """Solve a mixed-indication instance with a solver built for positive indications only.

    Every cache becomes a candidate whose exclusion is the one matching its
    indication; the solver never needs to know which were negative.
    """
    if not len(indications) == len(estimates) == len(costs):
        raise InvalidArgumentError("indications, estimates and costs differ in length")
    profiles = [
        CacheProfile(j, costs[j], exclusion_for_indication(estimates[j], indications[j]))
        for j in range(len(costs))
    ]
    return solver(profiles, miss_penalty)


@dataclass
class RequestContext:
    """What a client knows when a request arrives."""

    indications: Sequence[int]
    accuracies: Sequence[IndicatorAccuracy]
    positive_rates: Sequence[float]
    access_costs: Sequence[float]
    miss_penalty: float
    solver: FnoSolver = solve_fno_exhaustive
    oblivious_negatives: bool = False


def build_estimates(ctx: RequestContext) -> Tuple[List[ExclusionEstimate], int]:
    """Per-cache beliefs for ``ctx`` and the number of caches whose hit ratio fell back to q."""
    estimates = []
    insufficient = 0
    for q, acc in zip(ctx.positive_rates, ctx.accuracies):
        if not is_invertible(q, acc):
            insufficient += 1
        est = estimate_exclusion(q, acc, strict=False)
        if ctx.oblivious_negatives:
            est = ExclusionEstimate(est.h, est.q, est.mr_pos, 1.0 - EPSILON)
        estimates.append(est)
    return estimates, insufficient


def pgm_fna_decide(
    ctx: RequestContext, estimates: Optional[Sequence[ExclusionEstimate]] = None
) -> AccessDecision:
    """False-negative-aware decision for one request."""
    if estimates is None:
        estimates, _ = build_estimates(ctx)
    return reduce_and_solve(
        ctx.indications, estimates, ctx.access_costs, ctx.miss_penalty, ctx.solver
    )


def pgm_fno_decide(
    ctx: RequestContext, estimates: Optional[Sequence[ExclusionEstimate]] = None
) -> AccessDecision:
    """False-negative-oblivious decision: only positive-indication caches are candidates."""
    if estimates is None:
        estimates, _ = build_estimates(ctx)
    profiles = [
        CacheProfile(j, ctx.access_costs[j], estimates[j].mr_pos)
        for j, ind in enumerate(ctx.indications)
        if ind
    ]
    return ctx.solver(profiles, ctx.miss_penalty)
