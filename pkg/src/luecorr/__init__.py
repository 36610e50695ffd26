"""Exact LUE correlators, monotone Hurwitz numbers and their verification."""

__version__ = "0.1.0"
