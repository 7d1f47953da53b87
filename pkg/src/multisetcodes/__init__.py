"""Multiset codes for permutation channels: B_h-set constructions, lattice
tilings, exact optimal-code search, bounds and alternative constructions."""

__version__ = "0.1.0"
