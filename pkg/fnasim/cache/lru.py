"""LRU cache whose admissions and evictions drive a counting Bloom filter."""

from collections import OrderedDict
from typing import Callable, Iterator, Optional

from ..errors import ContractViolationError, InvalidArgumentError

Hook = Callable[[bytes], None]


def _noop(key: bytes):
    pass


class LruCache:
    """Fixed-capacity cache of opaque keys with least-recently-used eviction."""

    def __init__(
        self,
        capacity: int,
        on_admit: Optional[Hook] = None,
        on_evict: Optional[Hook] = None,
    ):
        if capacity < 1:
            raise InvalidArgumentError(f"capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.on_admit = on_admit or _noop
        self.on_evict = on_evict or _noop
        # Oldest first, MRU at the end
        self._entries: "OrderedDict[bytes, None]" = OrderedDict()

    def contains(self, key: bytes) -> bool:
        """Membership test; leaves recency untouched."""
        return key in self._entries

    def on_hit(self, key: bytes):
        """Move ``key`` to the most-recently-used position."""
        try:
            self._entries.move_to_end(key)
        except KeyError:
            raise ContractViolationError(f"on_hit for absent key {key!r}") from None

    def admit(self, key: bytes) -> Optional[bytes]:
        """Insert ``key`` at MRU, evicting the LRU key when full.

        Returns the evicted key, if any.
        """
        if key in self._entries:
            raise ContractViolationError(f"re-admission of cached key {key!r}")

        evicted = None
        if len(self._entries) >= self.capacity:
            evicted, _ = self._entries.popitem(last=False)
            self.on_evict(evicted)

        self._entries[key] = None
        self.on_admit(key)
        return evicted

    def keys(self) -> Iterator[bytes]:
        """Keys from least to most recently used."""
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: bytes) -> bool:
        return key in self._entries
