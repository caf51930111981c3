"""Exact Padé-type approximants of Lerch functions and a linear independence criterion."""

__version__ = "0.1.0"
