"""Exact computations with Lie algebras graded by a cyclic group of
automorphisms that is extended to a metacyclic Frobenius group."""

__version__ = "0.1.0"
