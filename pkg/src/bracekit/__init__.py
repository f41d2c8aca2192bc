"""Finite skew braces: validation, invariants, enumeration and statement checks."""

__version__ = "0.1.0"
