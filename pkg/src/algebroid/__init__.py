"""Exact computer algebra for Hopf algebroid symmetries of two-sided
dual 1-cells with a depth-2 certificate, over bimodule bicategories."""

__version__ = "0.1.0"
