"""Spectral types of meromorphic connections: quivers, root lattices,
middle convolution and the classification of fundamental types."""

__version__ = "0.1.0"
