"""Exact computations for symplectic fermion vertex operator superalgebras."""

__version__ = "0.1.0"
