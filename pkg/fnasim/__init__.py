"""fnasim - cache selection under stale Bloom-filter indicators."""

__version__ = "1.0.0"
