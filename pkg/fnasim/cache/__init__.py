"""Caches and placement."""

from .lru import LruCache
from .placement import PlacementPolicy

__all__ = ["LruCache", "PlacementPolicy"]
