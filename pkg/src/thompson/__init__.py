"""Exact computations in Thompson's groups T and V."""

__version__ = "0.1.0"
