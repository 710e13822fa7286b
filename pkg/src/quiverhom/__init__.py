"""Exact homological invariants of bound quiver algebras and their idempotent corners."""

__version__ = "0.1.0"
