"""Controller placement of missed items onto caches."""

import mmh3

from ..errors import InvalidArgumentError
from ..filters.bloom import fold_seed


class PlacementPolicy:
    """Hash-based, run-stable assignment of keys to one of ``num_caches`` caches."""

    def __init__(self, num_caches: int, seed: int = 0):
        if num_caches < 1:
            raise InvalidArgumentError(f"num_caches must be positive, got {num_caches}")
        self.num_caches = num_caches
        self.seed = seed
        self._hash_seed = fold_seed(seed)

    def assign_cache(self, key: bytes) -> int:
        """Index of the cache that receives ``key`` on a miss."""
        if self.num_caches == 1:
            return 0
        g1, _ = mmh3.hash64(key, self._hash_seed, signed=False)
        return g1 % self.num_caches
