"""Exact max-rank tests for symmetric polynomials on monomial complete intersections."""

__version__ = "0.1.0"
