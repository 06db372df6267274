"""Exact computations with convex partitions of R^d carried by arrangements."""

__version__ = "0.1.0"
