"""Exact verification engine for the h-deformed Minkowski algebras and their differential calculi."""

__version__ = "0.1.0"
