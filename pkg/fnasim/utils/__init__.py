"""Utility functions for fnasim."""

from .config_file import load_key_values, parse_config
from .reporting import format_table, format_value, read_csv, render_csv, write_csv

__all__ = [
    "load_key_values",
    "parse_config",
    "format_table",
    "format_value",
    "read_csv",
    "render_csv",
    "write_csv",
]
