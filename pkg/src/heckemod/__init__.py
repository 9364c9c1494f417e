"""Exact computations with type A Hecke algebras and their finite-dimensional modules."""

__version__ = "0.1.0"
