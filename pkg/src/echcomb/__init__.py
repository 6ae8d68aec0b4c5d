"""Exact combinatorial chain complexes for toric contact 3-manifolds."""

__version__ = "0.1.0"
