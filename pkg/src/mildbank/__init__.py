"""Numerical harmonic analysis on uniform grids: Wiener and S0 norms, bounded measures,
mild distributions, sampling series, translation-invariant systems and kernel operators."""

from .errors import MildbankError
from .grid import Grid, LatticeMatrix, SampledFunction, act, integrate, make_grid, sample_named

__version__ = "0.1.0"

__all__ = [
    "Grid",
    "LatticeMatrix",
    "SampledFunction",
    "MildbankError",
    "act",
    "integrate",
    "make_grid",
    "sample_named",
    "__version__",
]
