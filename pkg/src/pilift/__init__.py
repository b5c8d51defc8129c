"""Canonical lifts of pi-partial characters for pi-separable permutation groups."""

from .perm import Perm
from .permgroup import PermGroup
from .primes import PrimeSet

__version__ = "0.1.0"

__all__ = ["Perm", "PermGroup", "PrimeSet", "__version__"]
