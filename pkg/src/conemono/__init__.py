"""Exact monodromy and multiplier-ideal invariants of plane curve cones."""

__version__ = "0.1.0"
