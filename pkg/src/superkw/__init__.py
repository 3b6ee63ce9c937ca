"""Workbench for finite-dimensional restricted Lie superalgebras over GF(p^k)."""

from .gflin import Field

__all__ = ["Field"]
__version__ = "0.1.0"
