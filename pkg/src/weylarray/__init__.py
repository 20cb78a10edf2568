"""Polaritonic bands and Weyl physics of atomic arrays."""

__version__ = "0.1.0"
