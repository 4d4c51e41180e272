"""Exact tools for multiplier sequences over polynomial bases."""

__version__ = "0.1.0"
