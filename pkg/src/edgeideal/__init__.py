"""Exact invariants of edge ideals, with a focus on Cameron-Walker graphs."""

__version__ = "0.1.0"
