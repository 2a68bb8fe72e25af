"""Exact module theory of bound quivers over small prime fields."""
__version__ = "0.1.0"
