"""Dissipative structure of linear evolution systems."""

__version__ = "0.1.0"
