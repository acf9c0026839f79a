"""Exact Macdonald, interpolation and cumulant computations over Q(q, t)."""

__version__ = "0.1.0"
