"""Finite-scale constructions for conjugacy problems in automorphism groups
of countable homogeneous structures."""

from .search import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
