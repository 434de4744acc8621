"""Postulation of unions of zero-dimensional schemes of length at most 4."""

__version__ = "0.1.0"
