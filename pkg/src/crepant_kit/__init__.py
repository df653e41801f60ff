"""Exact and high-precision verification of the crepant resolution
correspondence for the weighted projective space P(1,3,4,4)."""

__version__ = "0.1.0"
