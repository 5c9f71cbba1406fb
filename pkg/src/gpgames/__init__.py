"""Solver, reduction compiler and theorem checks for general position games on graphs."""

__version__ = "0.1.0"
