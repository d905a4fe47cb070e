"""Certified zero-counting bounds with independent numerical cross-checks."""

__version__ = "0.1.0"
