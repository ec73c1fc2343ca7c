"""Cache-content indicators and their staleness estimators."""

from .bloom import (
    MAX_COUNTER,
    BloomFilter,
    CountingBloomFilter,
    FilterParams,
    designed_fpr,
    hash_positions,
    optimal_hash_count,
)
from .staleness import DeltaStats, delta_stats, estimate_fnr, estimate_fpr, fill_fpr

__all__ = [
    "MAX_COUNTER",
    "BloomFilter",
    "CountingBloomFilter",
    "FilterParams",
    "designed_fpr",
    "hash_positions",
    "optimal_hash_count",
    "DeltaStats",
    "delta_stats",
    "estimate_fnr",
    "estimate_fpr",
    "fill_fpr",
]
