"""Finite semidistributive lattices as two-acyclic factorization systems."""

__version__ = "0.1.0"
