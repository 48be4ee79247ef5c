"""Aliasing-structure summaries for two-level factorial and supersaturated designs."""

__version__ = "0.1.0"
