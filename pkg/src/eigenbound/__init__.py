"""Numerical checks of universal eigenvalue inequalities."""

__version__ = "0.1.0"
