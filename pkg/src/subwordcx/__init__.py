"""Subword complexes over finite Coxeter systems, decomposability checkers,
facet-ridge graphs and reconstruction verification."""

__version__ = "0.1.0"
