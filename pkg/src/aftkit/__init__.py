"""Arithmetic Fourier Transform toolkit."""

__version__ = "0.1.0"
