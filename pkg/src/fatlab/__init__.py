"""Fatness of bundles over compact homogeneous spaces, decided exactly."""

__version__ = "0.1.0"
