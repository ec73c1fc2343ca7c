"""Client-side beliefs about each cache: indicator accuracy, hit ratio, exclusion probabilities."""

from dataclasses import dataclass
from typing import Tuple

from ..errors import ContractViolationError, InvalidArgumentError

# Keeps probabilities off 0 and 1 before they are divided by or multiplied together
EPSILON = 1e-6


def clamp(x: float, lo: float = EPSILON, hi: float = 1.0 - EPSILON) -> float:
    return lo if x < lo else hi if x > hi else x


@dataclass(frozen=True)
class IndicatorAccuracy:
    """False-positive and false-negative ratios a cache reports for its indicator."""

    fpr: float = 0.0
    fnr: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.fpr <= 1.0 and 0.0 <= self.fnr <= 1.0):
            raise InvalidArgumentError(f"accuracy out of [0, 1]: {self}")


@dataclass(frozen=True)
class ExclusionEstimate:
    """Belief about one cache: hit ratio, positive ratio and both exclusion probabilities."""

    h: float
    q: float
    mr_pos: float
    mr_neg: float


def positive_prob(h: float, acc: IndicatorAccuracy) -> float:
    """Probability of a positive indication: h(1 - fnr) + (1 - h) fpr."""
    return h * (1.0 - acc.fnr) + (1.0 - h) * acc.fpr


def exclusion_probs(h: float, acc: IndicatorAccuracy) -> Tuple[float, float]:
    """Probability the item is absent given a positive and given a negative indication.

    Returns ``(mr_pos, mr_neg)``, each clamped to [EPSILON, 1 - EPSILON].
    """
    q = clamp(positive_prob(h, acc))
    mr_pos = acc.fpr * (1.0 - h) / q
    mr_neg = (1.0 - acc.fpr) * (1.0 - h) / (1.0 - q)
    return clamp(mr_pos), clamp(mr_neg)


def is_sufficiently_accurate(acc: IndicatorAccuracy) -> bool:
    """fpr + fnr < 1, equivalently a negative indication is more telling than a positive one."""
    return acc.fpr + acc.fnr < 1.0


def estimate_hit_ratio(q: float, acc: IndicatorAccuracy) -> float:
    """Invert :func:`positive_prob`: h = (q - fpr) / (1 - fpr - fnr), clamped to [0, 1]."""
    if not is_sufficiently_accurate(acc):
        raise ContractViolationError(
            f"hit ratio undefined for insufficiently accurate indicator {acc}"
        )
    h = (q - acc.fpr) / (1.0 - acc.fpr - acc.fnr)
    return min(1.0, max(0.0, h))


def is_invertible(q: float, acc: IndicatorAccuracy) -> bool:
    """Whether (q - fpr) / (1 - fpr - fnr) is a usable hit ratio, i.e. lies in [0, 1].

    A stale filter can report an fnr high enough to push the raw inversion above 1.
    """
    if not is_sufficiently_accurate(acc):
        return False
    h = (q - acc.fpr) / (1.0 - acc.fpr - acc.fnr)
    return -EPSILON <= h <= 1.0 + EPSILON


def estimate_exclusion(q: float, acc: IndicatorAccuracy, strict: bool = True) -> ExclusionEstimate:
    """Belief for one cache from its positive ratio ``q`` and reported accuracy.

    With ``strict=False`` an indicator whose inversion is not usable (see
    :func:`is_invertible`) does not raise; the hit ratio falls back to ``q`` itself.
    """
    if strict or is_invertible(q, acc):
        h = estimate_hit_ratio(q, acc)
    else:
        h = q
    h = clamp(h)
    mr_pos, mr_neg = exclusion_probs(h, acc)
    return ExclusionEstimate(h=h, q=q, mr_pos=mr_pos, mr_neg=mr_neg)


def exclusion_for_indication(est: ExclusionEstimate, indication: int) -> float:
    """The exclusion probability that applies given the indication received."""
    return est.mr_pos if indication else est.mr_neg


class PositiveRateEstimator:
    """Moving estimate of the ratio of positive indications a cache's replica gives.

    For the first ``horizon`` requests q is the running ratio. After that, q stays
    fixed within each epoch of ``horizon`` requests and is blended at the epoch's
    end: q = smoothing * epoch_ratio + (1 - smoothing) * q.
    """

    def __init__(self, horizon: int = 100, smoothing: float = 0.25, prior: float = 0.0):
        if horizon < 1:
            raise InvalidArgumentError(f"horizon must be positive, got {horizon}")
        if not 0.0 < smoothing < 1.0:
            raise InvalidArgumentError(f"smoothing must lie in (0, 1), got {smoothing}")
        self.horizon = horizon
        self.smoothing = smoothing
        self.q = min(1.0, max(0.0, prior))
        self.window_positive = 0
        self.window_total = 0
        self.bootstrap_total = 0
        self.bootstrap_positive = 0

    @property
    def bootstrapping(self) -> bool:
        return self.bootstrap_total < self.horizon

    def observe(self, indication: int):
        if self.bootstrapping:
            self.bootstrap_total += 1
            self.bootstrap_positive += indication
            self.q = self.bootstrap_positive / self.bootstrap_total
            return

        self.window_total += 1
        self.window_positive += indication
        if self.window_total == self.horizon:
            ratio = self.window_positive / self.horizon
            self.q = self.smoothing * ratio + (1.0 - self.smoothing) * self.q
            self.window_positive = 0
            self.window_total = 0