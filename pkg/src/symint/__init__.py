"""Exact symbolic integration of rational functions."""
__version__ = "0.1.0"
