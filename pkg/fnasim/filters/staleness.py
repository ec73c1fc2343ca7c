"""Staleness diff between a cache's current filter and its advertised replica."""

from dataclasses import dataclass

from ..errors import InvalidArgumentError
from .bloom import BloomFilter


@dataclass(frozen=True)
class DeltaStats:
    """Bit counts comparing an updated filter with a stale one.

    b1/b0 count set/reset bits of the updated filter, d1 the bits set in the
    updated filter but reset in the stale one, d0 the reverse.
    """

    b1: int
    b0: int
    d1: int
    d0: int
    num_bits: int

    def __post_init__(self):
        if self.b1 + self.b0 != self.num_bits:
            raise InvalidArgumentError(f"b1 + b0 must equal num_bits: {self}")
        if not (0 <= self.d1 <= self.b1 and 0 <= self.d0 <= self.b0):
            raise InvalidArgumentError(f"deltas out of range: {self}")


def delta_stats(stale: BloomFilter, updated: BloomFilter) -> DeltaStats:
    """Exact bitwise diff between ``updated`` and its ``stale`` replica."""
    if not stale.params.same_geometry(updated.params):
        raise InvalidArgumentError(
            f"filter params differ: stale={stale.params} updated={updated.params}"
        )
    m = updated.params.num_bits
    b1 = updated.bits.count(1)
    d1 = (updated.bits & ~stale.bits).count(1)
    d0 = (stale.bits & ~updated.bits).count(1)
    return DeltaStats(b1=b1, b0=m - b1, d1=d1, d0=d0, num_bits=m)


def estimate_fnr(ds: DeltaStats, k: int) -> float:
    """False-negative ratio of the stale replica: 1 - ((b1 - d1) / b1)^k.

    An empty updated filter means an empty cache, so the ratio is 0.
    """
    if ds.b1 == 0:
        return 0.0
    return 1.0 - ((ds.b1 - ds.d1) / ds.b1) ** k


def estimate_fpr(ds: DeltaStats, k: int) -> float:
    """False-positive ratio of the stale replica: ((b1 - d1 + d0) / m)^k."""
    if ds.num_bits <= 0:
        raise InvalidArgumentError("num_bits must be positive")
    return ((ds.b1 - ds.d1 + ds.d0) / ds.num_bits) ** k


def fill_fpr(bf: BloomFilter) -> float:
    """False-positive ratio of a fresh filter, (set bits / m)^k."""
    return bf.fill_ratio() ** bf.params.num_hashes
