"""Numerical laboratory for the sixth moment of the Riemann zeta function."""

__version__ = "0.1.0"
