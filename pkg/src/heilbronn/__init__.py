"""Certified bounds for the Heilbronn triangle problem on integer grids."""
__version__ = "0.1.0"
