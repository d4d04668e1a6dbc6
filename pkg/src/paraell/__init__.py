"""Numerical toolkit for parameter-elliptic boundary-value problems on Hörmander spaces."""

__version__ = "0.1.0"
