"""Exact computations with the hyperoctahedral category and degree-zero hyperoctahedral homology."""

__version__ = "0.1.0"
