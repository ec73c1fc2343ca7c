"""Bloom and counting Bloom filters used as cache-content indicators."""

import math
import struct
from dataclasses import dataclass
from typing import Iterable, List

import mmh3
import numpy as np
from bitarray import bitarray

from ..errors import InvalidArgumentError

# 3-bit counters
MAX_COUNTER = 7

# Advertisement header: num_bits u64, num_hashes u16, seed u64, payload length u64
_HEADER = struct.Struct("<QHQQ")

_SEED_MASK = 0xFFFFFFFFFFFFFFFF


def optimal_hash_count(bpe: float) -> int:
    """Number of hash functions minimizing the false-positive ratio for ``bpe``."""
    if bpe <= 0:
        raise InvalidArgumentError(f"bpe must be positive, got {bpe}")
    return max(1, round(bpe * math.log(2)))


def designed_fpr(bpe: float) -> float:
    """False-positive ratio of a filter filled to capacity at ``bpe`` bits per element."""
    k = optimal_hash_count(bpe)
    return (1.0 - math.exp(-k / bpe)) ** k


@dataclass(frozen=True)
class FilterParams:
    """Geometry and hash seed shared by a cache and every replica of its indicator."""

    num_bits: int
    num_hashes: int
    bpe: float
    seed: int = 0

    def __post_init__(self):
        if self.num_hashes < 1 or self.num_bits < self.num_hashes:
            raise InvalidArgumentError(
                f"need num_bits >= num_hashes >= 1, got m={self.num_bits} k={self.num_hashes}"
            )
        if not 0 <= self.seed <= _SEED_MASK:
            raise InvalidArgumentError(f"seed must fit in 64 bits, got {self.seed}")

    @classmethod
    def for_capacity(cls, capacity: int, bpe: float, seed: int = 0) -> "FilterParams":
        """Size a filter for ``capacity`` cached items."""
        if capacity < 1:
            raise InvalidArgumentError(f"capacity must be positive, got {capacity}")
        k = optimal_hash_count(bpe)
        return cls(num_bits=max(k, math.ceil(bpe * capacity)), num_hashes=k, bpe=bpe, seed=seed)

    def same_geometry(self, other: "FilterParams") -> bool:
        """True when two filters hash keys to the same positions."""
        return (self.num_bits, self.num_hashes, self.seed) == (
            other.num_bits, other.num_hashes, other.seed
        )


def fold_seed(seed: int) -> int:
    # mmh3 takes a 32-bit seed
    return (seed ^ (seed >> 32)) & 0xFFFFFFFF


def hash_pair(key: bytes, seed: int) -> tuple:
    """Two 64-bit hashes of ``key``; the second is forced odd."""
    g1, g2 = mmh3.hash64(key, fold_seed(seed), signed=False)
    return g1, g2 | 1


def positions_from_pair(g1: int, g2: int, num_bits: int, num_hashes: int) -> List[int]:
    return [(g1 + i * g2) % num_bits for i in range(num_hashes)]


def hash_positions(key: bytes, params: FilterParams) -> List[int]:
    """Double-hashing positions of ``key``: (g1 + i*g2) mod m for i < k."""
    g1, g2 = hash_pair(key, params.seed)
    return positions_from_pair(g1, g2, params.num_bits, params.num_hashes)


class BloomFilter:
    """Plain 1-bit Bloom filter, the form a cache advertises to clients."""

    def __init__(self, params: FilterParams, bits: bitarray = None):
        self.params = params
        if bits is None:
            bits = bitarray(params.num_bits, endian="little")
            bits.setall(0)
        elif len(bits) != params.num_bits:
            raise InvalidArgumentError(
                f"bit array length {len(bits)} does not match num_bits {params.num_bits}"
            )
        self.bits = bits

    def add(self, key: bytes):
        for i in hash_positions(key, self.params):
            self.bits[i] = 1

    def query(self, key: bytes) -> int:
        """1 iff every bit at the key's positions is set."""
        return self.query_positions(hash_positions(key, self.params))

    def query_positions(self, positions: Iterable[int]) -> int:
        bits = self.bits
        for i in positions:
            if not bits[i]:
                return 0
        return 1

    def set_bits(self) -> int:
        return self.bits.count(1)

    def fill_ratio(self) -> float:
        return self.bits.count(1) / self.params.num_bits

    def copy(self) -> "BloomFilter":
        return BloomFilter(self.params, self.bits.copy())

    def to_bytes(self) -> bytes:
        """Serialize as a length-prefixed little-endian bit array behind a params header."""
        payload = self.bits.tobytes()
        header = _HEADER.pack(
            self.params.num_bits, self.params.num_hashes, self.params.seed, len(payload)
        )
        return header + payload

    @classmethod
    def from_bytes(cls, data: bytes, bpe: float = None) -> "BloomFilter":
        """Decode an advertisement produced by :meth:`to_bytes`.

        ``bpe`` is not carried on the wire; pass it to restore the full params.
        """
        if len(data) < _HEADER.size:
            raise InvalidArgumentError(f"advertisement truncated: {len(data)} bytes")
        num_bits, num_hashes, seed, length = _HEADER.unpack_from(data)
        payload = data[_HEADER.size:]
        if length != len(payload) or length != (num_bits + 7) // 8:
            raise InvalidArgumentError(
                f"advertisement payload is {len(payload)} bytes, header says {length}"
            )
        bits = bitarray(endian="little")
        bits.frombytes(payload)
        del bits[num_bits:]
        params = FilterParams(
            num_bits=num_bits,
            num_hashes=num_hashes,
            bpe=bpe if bpe is not None else num_hashes / math.log(2),
            seed=seed,
        )
        return cls(params, bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BloomFilter):
            return NotImplemented
        return self.params.same_geometry(other.params) and self.bits == other.bits

    def __repr__(self) -> str:
        return (
            f"BloomFilter(m={self.params.num_bits}, k={self.params.num_hashes}, "
            f"set={self.set_bits()})"
        )


class CountingBloomFilter:
    """Counting Bloom filter with 3-bit saturating counters.

    A counter that reached 7 stays there: removals never decrement it, so
    undercounting cannot introduce false negatives.
    """

    def __init__(self, params: FilterParams):
        self.params = params
        self.counters = np.zeros(params.num_bits, dtype=np.uint8)

    def insert(self, key: bytes):
        self.insert_positions(hash_positions(key, self.params))

    def insert_positions(self, positions: Iterable[int]):
        counters = self.counters
        for i in positions:
            value = counters[i]
            if value < MAX_COUNTER:
                counters[i] = value + 1

    def remove(self, key: bytes):
        """Undo one :meth:`insert` of ``key``. The caller guarantees it was inserted."""
        self.remove_positions(hash_positions(key, self.params))

    def remove_positions(self, positions: Iterable[int]):
        counters = self.counters
        for i in positions:
            value = counters[i]
            if 0 < value < MAX_COUNTER:
                counters[i] = value - 1

    def compress(self) -> BloomFilter:
        """Project onto a plain Bloom filter: bit i set iff counter i > 0."""
        bits = bitarray(endian="little")
        bits.pack((self.counters > 0).tobytes())
        return BloomFilter(self.params, bits)

    def saturated_count(self) -> int:
        return int(np.count_nonzero(self.counters == MAX_COUNTER))
