"""Exact computation of values of modular functions at divisors of modular forms."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
