"""Exact block spaces and Dehn twist orders for ribbon factorizable Hopf algebras."""

__version__ = "0.1.0"
