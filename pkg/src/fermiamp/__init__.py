"""Fermionic entanglement under uniform acceleration, beyond the single-mode approximation."""

__version__ = "0.1.0"
