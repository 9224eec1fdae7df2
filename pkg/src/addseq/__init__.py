"""Exact minimum-cost addition sequences."""

__version__ = "0.1.0"
