"""Exact computations around splinters, Frobenius actions and finite covers in positive characteristic."""

__version__ = "0.1.0"
