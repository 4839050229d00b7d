"""Exact NPN classification of Boolean functions."""

__version__ = "1.0.0"
