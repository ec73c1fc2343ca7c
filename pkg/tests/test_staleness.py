import math

import numpy as np
import pytest

from fnasim.errors import InvalidArgumentError
from fnasim.filters.bloom import BloomFilter, CountingBloomFilter, FilterParams
from fnasim.filters.staleness import (
    DeltaStats,
    delta_stats,
    estimate_fnr,
    estimate_fpr,
    fill_fpr,
)

from .conftest import random_keys


def _filter(params, ones):
    bf = BloomFilter(params)
    for i in ones:
        bf.bits[i] = 1
    return bf


def test_delta_stats_counts_each_kind_of_bit():
    # GIVEN an updated filter with bits {0,1,2,3} and a stale one with {2,3,4}
    params = FilterParams(num_bits=10, num_hashes=2, bpe=5.0)
    updated = _filter(params, [0, 1, 2, 3])
    stale = _filter(params, [2, 3, 4])

    # WHEN
    ds = delta_stats(stale, updated)

    # THEN
    assert (ds.b1, ds.b0, ds.d1, ds.d0) == (4, 6, 2, 1)


def test_delta_stats_of_identical_filters():
    params = FilterParams(num_bits=16, num_hashes=2, bpe=4.0)
    bf = _filter(params, [1, 5, 9])
    ds = delta_stats(bf.copy(), bf)
    assert (ds.d1, ds.d0) == (0, 0)
    assert estimate_fnr(ds, 2) == 0.0


def test_delta_stats_rejects_mismatched_geometry():
    a = BloomFilter(FilterParams(num_bits=16, num_hashes=2, bpe=4.0))
    b = BloomFilter(FilterParams(num_bits=32, num_hashes=2, bpe=4.0))
    with pytest.raises(InvalidArgumentError):
        delta_stats(a, b)


def test_delta_stats_validation():
    with pytest.raises(InvalidArgumentError):
        DeltaStats(b1=3, b0=3, d1=0, d0=0, num_bits=10)
    with pytest.raises(InvalidArgumentError):
        DeltaStats(b1=3, b0=7, d1=4, d0=0, num_bits=10)


def test_estimators_on_known_counts():
    ds = DeltaStats(b1=4, b0=6, d1=2, d0=1, num_bits=10)
    assert estimate_fnr(ds, 2) == pytest.approx(1 - (2 / 4) ** 2)
    assert estimate_fpr(ds, 2) == pytest.approx((3 / 10) ** 2)


def test_fnr_of_empty_updated_filter_is_zero():
    ds = DeltaStats(b1=0, b0=10, d1=0, d0=4, num_bits=10)
    assert estimate_fnr(ds, 3) == 0.0


def test_estimators_are_monotone_in_the_deltas():
    m, b1, k = 1000, 500, 5
    fnrs = [estimate_fnr(DeltaStats(b1, m - b1, d1, 0, m), k) for d1 in range(0, b1 + 1, 25)]
    fprs = [estimate_fpr(DeltaStats(b1, m - b1, 0, d0, m), k) for d0 in range(0, m - b1 + 1, 25)]
    assert all(x <= y for x, y in zip(fnrs, fnrs[1:]))
    assert all(x <= y for x, y in zip(fprs, fprs[1:]))
    assert fnrs[-1] == 1.0


def test_fresh_replica_estimates_match_fill(rng):
    # GIVEN a replica identical to the updated filter
    params = FilterParams.for_capacity(500, 10, seed=4)
    bf = BloomFilter(params)
    for key in random_keys(rng, 500):
        bf.add(key)

    # WHEN
    ds = delta_stats(bf.copy(), bf)

    # THEN
    assert estimate_fnr(ds, params.num_hashes) == 0.0
    assert estimate_fpr(ds, params.num_hashes) == pytest.approx(fill_fpr(bf))


CHURNS = (0.05, 0.1, 0.2)
BPES = (4, 8, 14)


def _churned_pair(rng, seed, churn=0.1, bpe=14):
    """Filters of a 1000-item cache before and after ``churn`` of its items were replaced.

    Also returns the cached keys after the churn.
    """
    n = 1_000
    replaced = round(churn * n)
    params = FilterParams.for_capacity(n, bpe, seed=seed)
    keys = random_keys(rng, n + replaced)
    old, new = keys[:n], keys[replaced:]
    stale_cbf, updated_cbf = CountingBloomFilter(params), CountingBloomFilter(params)
    for key in old:
        stale_cbf.insert(key)
    for key in new:
        updated_cbf.insert(key)
    return params, stale_cbf.compress(), updated_cbf.compress(), new


@pytest.mark.parametrize("bpe", BPES)
@pytest.mark.parametrize("churn", CHURNS)
def test_fnr_estimate_under_its_sampling_model(churn, bpe):
    # GIVEN keys whose k positions are drawn uniformly from the updated filter's set bits
    hits, samples = 0, 0
    expected = []
    for seed in range(20):
        rng = np.random.default_rng(seed)
        params, stale, updated, _ = _churned_pair(rng, seed, churn, bpe)
        k = params.num_hashes
        set_positions = np.flatnonzero(np.array(updated.bits.tolist(), dtype=bool))
        stale_bits = np.array(stale.bits.tolist(), dtype=bool)

        # WHEN the stale replica is queried for 2000 such keys
        n = 2_000
        drawn = rng.choice(set_positions, size=(n, k), replace=True)
        negatives = ~stale_bits[drawn].all(axis=1)
        hits += int(negatives.sum())
        samples += n
        expected.append(estimate_fnr(delta_stats(stale, updated), k))

    # THEN the pooled rate matches the pooled estimate within 4 standard errors
    p = float(np.mean(expected))
    se = math.sqrt(p * (1 - p) / samples)
    assert abs(hits / samples - p) <= 4 * se


@pytest.mark.parametrize("bpe", BPES)
@pytest.mark.parametrize("churn", CHURNS)
def test_fpr_estimate_for_absent_keys(churn, bpe):
    # GIVEN
    positives, samples, expected = 0, 0, []
    for seed in range(5):
        rng = np.random.default_rng(100 + seed)
        params, stale, updated, _ = _churned_pair(rng, seed, churn, bpe)

        # WHEN keys never cached are queried against the stale replica
        n = 20_000
        positives += sum(stale.query(key) for key in random_keys(rng, n, prefix="absent"))
        samples += n
        expected.append(estimate_fpr(delta_stats(stale, updated), params.num_hashes))

    # THEN
    p = float(np.mean(expected))
    se = math.sqrt(p * (1 - p) / samples)
    assert abs(positives / samples - p) <= 4 * se


@pytest.mark.parametrize("churn", CHURNS)
def test_fnr_estimate_overstates_misses_on_cached_keys(churn):
    # GIVEN a replica advertised before the newest `churn` share of the cache arrived
    rng = np.random.default_rng(7)
    params, stale, updated, cached = _churned_pair(rng, 7, churn, 14)

    # WHEN every cached key is queried against the stale replica
    observed = sum(not stale.query(key) for key in cached) / len(cached)
    estimate = estimate_fnr(delta_stats(stale, updated), params.num_hashes)

    # THEN only the newest keys are missed, yet the estimate is more than twice as high
    assert observed == pytest.approx(churn, abs=0.01)
    assert estimate > 2 * observed
