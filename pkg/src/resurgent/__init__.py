"""Meromorphic transforms, certified asymptotic expansions and Borel-Laplace resummation."""

__version__ = "0.1.0"
