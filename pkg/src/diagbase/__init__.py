"""Greedy bases and relational complexity of diagonal-type permutation groups."""

__version__ = "0.1.0"
