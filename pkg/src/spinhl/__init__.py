"""Exact evaluation of inhomogeneous spin Hall-Littlewood functions and
verification of their refined Littlewood identity."""

__version__ = "0.1.0"
