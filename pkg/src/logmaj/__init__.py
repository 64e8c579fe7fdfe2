"""Numerical verification of log-majorization eigenvalue inequalities for sums
of positive semidefinite matrices and of Hua-Marcus inequalities for
contractions."""

from ._backend import BACKEND
from .linalg import IndexSequence, SpectralDecomposition

__version__ = "0.1.0"

__all__ = ["BACKEND", "IndexSequence", "SpectralDecomposition", "__version__"]
