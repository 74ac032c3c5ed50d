"""Kneading invariants, Markov partitions and entropy for interval and triangular maps."""

__version__ = "0.1.0"
