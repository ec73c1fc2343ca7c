import math

import numpy as np
import pytest
from scipy.stats import chisquare

from fnasim.errors import InvalidArgumentError
from fnasim.filters.bloom import (
    MAX_COUNTER,
    BloomFilter,
    CountingBloomFilter,
    FilterParams,
    designed_fpr,
    hash_positions,
    optimal_hash_count,
)

from .conftest import random_keys


def test_optimal_hash_count():
    assert optimal_hash_count(14) == 10
    assert optimal_hash_count(1) == 1
    assert optimal_hash_count(8) == 6
    assert optimal_hash_count(0.5) == 1


@pytest.mark.parametrize("bpe", [0, -3.0])
def test_optimal_hash_count_rejects_non_positive_bpe(bpe):
    with pytest.raises(InvalidArgumentError):
        optimal_hash_count(bpe)


def test_designed_fpr_at_baseline_bpe():
    # (1 - e^{-10/14})^10
    assert designed_fpr(14) == pytest.approx(0.00121, abs=5e-5)


def test_params_for_capacity():
    params = FilterParams.for_capacity(10_000, 14, seed=3)
    assert params.num_bits == 140_000
    assert params.num_hashes == 10
    assert params.seed == 3


def test_params_reject_too_few_bits():
    with pytest.raises(InvalidArgumentError):
        FilterParams(num_bits=2, num_hashes=3, bpe=1.0)


def test_hash_positions_deterministic_and_in_range():
    params = FilterParams(num_bits=1000, num_hashes=7, bpe=10.0, seed=99)
    first = hash_positions(b"some-key", params)
    assert first == hash_positions(b"some-key", params)
    assert len(first) == 7
    assert all(0 <= i < 1000 for i in first)


def test_hash_positions_single_hash():
    params = FilterParams(num_bits=64, num_hashes=1, bpe=1.0)
    assert len(hash_positions(b"x", params)) == 1


def test_hash_positions_depend_on_seed():
    a = FilterParams(num_bits=1 << 20, num_hashes=4, bpe=10.0, seed=1)
    b = FilterParams(num_bits=1 << 20, num_hashes=4, bpe=10.0, seed=2)
    assert hash_positions(b"key", a) != hash_positions(b"key", b)


@pytest.mark.parametrize("which", [0, -1])
def test_hash_positions_are_uniform(rng, which):
    # GIVEN
    num_bits = 1000
    keys = random_keys(rng, 100_000)

    # WHEN
    p_values = []
    for seed in (11, 12, 13):
        params = FilterParams(num_bits=num_bits, num_hashes=4, bpe=4.0, seed=seed)
        counts = np.bincount(
            [hash_positions(key, params)[which] for key in keys], minlength=num_bits
        )
        p_values.append(chisquare(counts).pvalue)

    # THEN at most one seed may fail a 1% test by chance
    assert sum(p < 0.01 for p in p_values) <= 1


def test_insert_then_query_positive():
    cbf = CountingBloomFilter(FilterParams.for_capacity(100, 14))
    cbf.insert(b"a")
    assert cbf.compress().query(b"a") == 1


def test_insert_twice_remove_once_still_positive():
    cbf = CountingBloomFilter(FilterParams.for_capacity(100, 14))
    cbf.insert(b"a")
    cbf.insert(b"a")
    cbf.remove(b"a")
    assert cbf.compress().query(b"a") == 1


def test_insert_then_remove_clears_counters():
    cbf = CountingBloomFilter(FilterParams.for_capacity(100, 14))
    cbf.insert(b"a")
    cbf.remove(b"a")
    assert not cbf.counters.any()
    assert cbf.compress().query(b"a") == 0


def test_remove_from_empty_filter_keeps_zero():
    cbf = CountingBloomFilter(FilterParams.for_capacity(100, 14))
    cbf.remove(b"never-inserted")
    assert not cbf.counters.any()


def test_counters_saturate_and_stick():
    params = FilterParams(num_bits=16, num_hashes=1, bpe=1.0)
    cbf = CountingBloomFilter(params)
    for _ in range(10):
        cbf.insert(b"hot")
    (pos,) = hash_positions(b"hot", params)
    assert cbf.counters[pos] == MAX_COUNTER
    assert cbf.saturated_count() == 1

    for _ in range(10):
        cbf.remove(b"hot")
    assert cbf.counters[pos] == MAX_COUNTER


def test_compress_projects_counters():
    cbf = CountingBloomFilter(FilterParams(num_bits=4, num_hashes=1, bpe=4.0))
    cbf.counters[:] = [0, 3, 1, 0]
    assert cbf.compress().bits.tolist() == [0, 1, 1, 0]


def test_compress_of_empty_filter_is_empty():
    cbf = CountingBloomFilter(FilterParams.for_capacity(50, 8))
    assert cbf.compress().set_bits() == 0


def test_fill_fraction_near_half_at_capacity(rng):
    # GIVEN
    params = FilterParams.for_capacity(10_000, 14, seed=5)
    cbf = CountingBloomFilter(params)

    # WHEN
    for key in random_keys(rng, 10_000):
        cbf.insert(key)

    # THEN
    assert 0.45 <= cbf.compress().fill_ratio() <= 0.55


def test_fill_fraction_over_seeds():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        params = FilterParams.for_capacity(1_000, 14, seed=seed)
        bf = BloomFilter(params)
        for key in random_keys(rng, 1_000):
            bf.add(key)
        assert 0.4 <= bf.fill_ratio() <= 0.6


def test_no_false_negatives_in_fresh_filter(rng):
    for trial in range(5):
        params = FilterParams.for_capacity(500, 8, seed=trial)
        cbf = CountingBloomFilter(params)
        keys = random_keys(rng, 500)
        for key in keys:
            cbf.insert(key)
        bf = cbf.compress()
        assert all(bf.query(key) == 1 for key in keys)


def test_insert_remove_replay_matches_live_set(rng):
    # GIVEN
    params = FilterParams.for_capacity(1_000, 14, seed=8)
    cbf = CountingBloomFilter(params)
    pool = random_keys(rng, 400)
    live = set()

    # WHEN 1K random inserts and removals
    for _ in range(1_000):
        key = pool[rng.integers(len(pool))]
        if key in live:
            cbf.remove(key)
            live.remove(key)
        else:
            cbf.insert(key)
            live.add(key)

    # THEN
    rebuilt = CountingBloomFilter(params)
    for key in live:
        rebuilt.insert(key)
    assert cbf.saturated_count() == 0
    assert cbf.compress() == rebuilt.compress()
    assert all(cbf.compress().query(key) == 1 for key in live)


def test_identical_operations_give_identical_state(rng):
    keys = random_keys(rng, 300)
    params = FilterParams.for_capacity(300, 10, seed=77)
    a, b = CountingBloomFilter(params), CountingBloomFilter(params)
    for cbf in (a, b):
        for key in keys:
            cbf.insert(key)
        for key in keys[:100]:
            cbf.remove(key)
    assert np.array_equal(a.counters, b.counters)


def test_query_true_positive_and_true_negative():
    # GIVEN a small filter holding X and Y
    params = FilterParams(num_bits=32, num_hashes=3, bpe=16.0, seed=1)
    bf = BloomFilter(params)
    bf.add(b"X")
    bf.add(b"Y")

    # WHEN a key hits at least one unset bit
    w = next(
        f"W{i}".encode()
        for i in range(1000)
        if any(not bf.bits[p] for p in hash_positions(f"W{i}".encode(), params))
    )

    # THEN
    assert bf.query(b"X") == 1
    assert bf.query(b"Y") == 1
    assert bf.query(w) == 0


def test_empty_filter_answers_negative():
    bf = BloomFilter(FilterParams.for_capacity(100, 14))
    assert bf.query(b"anything") == 0


def test_empirical_fpr_matches_fill(rng):
    # GIVEN 10K keys at bpe=14
    params = FilterParams.for_capacity(10_000, 14, seed=21)
    bf = BloomFilter(params)
    for key in random_keys(rng, 10_000, prefix="in"):
        bf.add(key)
    expected = bf.fill_ratio() ** params.num_hashes

    # WHEN
    n = 200_000
    positives = sum(bf.query(key) for key in random_keys(rng, n, prefix="out"))

    # THEN
    se = math.sqrt(expected * (1 - expected) / n)
    assert abs(positives / n - expected) <= 3 * se
    assert expected == pytest.approx(designed_fpr(14), rel=0.2)


def test_advertisement_codec():
    # GIVEN
    params = FilterParams.for_capacity(100, 14, seed=2**40 + 5)
    bf = BloomFilter(params)
    for i in range(100):
        bf.add(b"%d" % i)

    # WHEN
    data = bf.to_bytes()
    decoded = BloomFilter.from_bytes(data, bpe=14)

    # THEN
    assert decoded == bf
    assert decoded.params == params
    assert len(data) == 26 + math.ceil(params.num_bits / 8)
    assert int.from_bytes(data[:8], "little") == params.num_bits


def test_advertisement_codec_rejects_truncated_payload():
    data = BloomFilter(FilterParams.for_capacity(100, 14)).to_bytes()
    with pytest.raises(InvalidArgumentError):
        BloomFilter.from_bytes(data[:-3])
    with pytest.raises(InvalidArgumentError):
        BloomFilter.from_bytes(data[:10])
