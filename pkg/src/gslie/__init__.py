"""Lie point symmetry toolkit for the Grad-Shafranov equation family."""

__version__ = "0.1.0"
