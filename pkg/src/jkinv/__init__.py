"""Kronecker-Jordan invariants of matrix pencils and of Lie algebra representations."""

__version__ = "0.1.0"
