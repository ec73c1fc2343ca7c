"""Decisions and estimates that need to see the true cache contents."""

from dataclasses import dataclass
from typing import Sequence

from ..cache.lru import LruCache
from ..strategy.beliefs import ExclusionEstimate, IndicatorAccuracy, clamp
from ..strategy.hetero import AccessDecision


def pif_decide(
    key: bytes,
    caches: Sequence[LruCache],
    costs: Sequence[float],
    miss_penalty: float = 0.0,
) -> AccessDecision:
    """Access the cheapest cache that holds ``key``, or nothing.

    The predicted cost is the realized one: that cache's cost, or ``miss_penalty``.
    """
    holders = [j for j, cache in enumerate(caches) if cache.contains(key)]
    if not holders:
        return AccessDecision(frozenset(), miss_penalty)
    best = min(holders, key=lambda j: (costs[j], j))
    return AccessDecision(frozenset((best,)), costs[best])


@dataclass
class IndicationWindow:
    """Indication outcomes of one cache's replica since its last advertisement."""

    positives: int = 0
    false_positives: int = 0
    negatives: int = 0
    false_negatives: int = 0

    def record(self, indication: int, present: bool):
        if indication:
            self.positives += 1
            if not present:
                self.false_positives += 1
        else:
            self.negatives += 1
            if present:
                self.false_negatives += 1

    def reset(self):
        self.positives = self.false_positives = 0
        self.negatives = self.false_negatives = 0


def cache_aware_estimates(window: IndicationWindow, fallback: IndicatorAccuracy) -> IndicatorAccuracy:
    """Error ratios measured over the window, conditioned on the indication.

    fpr* = false positives / positive indications and fnr* = false negatives /
    negative indications; a side with no indications takes the fallback value.
    """
    fpr = window.false_positives / window.positives if window.positives else fallback.fpr
    fnr = window.false_negatives / window.negatives if window.negatives else fallback.fnr
    return IndicatorAccuracy(fpr=fpr, fnr=fnr)


def cache_aware_exclusion(window: IndicationWindow, estimate: ExclusionEstimate) -> ExclusionEstimate:
    """Exclusion probabilities read directly off the window.

    A positive indication is wrong with probability fpr*, a negative one right
    with probability 1 - fnr*. Sides without observations keep ``estimate``.
    """
    measured = cache_aware_estimates(
        window, IndicatorAccuracy(fpr=estimate.mr_pos, fnr=1.0 - estimate.mr_neg)
    )
    return ExclusionEstimate(
        h=estimate.h,
        q=estimate.q,
        mr_pos=clamp(measured.fpr),
        mr_neg=clamp(1.0 - measured.fnr),
    )
