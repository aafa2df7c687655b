"""Exact q-expansions of p-adic Eisenstein series and measures, and a verifier for
the syntomic Eisenstein class on the ordinary locus."""

from .arith import CycRat, NotPIntegralError, PadicCyc, ParameterError, PrecisionError
from .level import GL2ModN, LevelFunction
from .qexp import QExpansion

__version__ = "0.1.0"

__all__ = ["CycRat", "GL2ModN", "LevelFunction", "NotPIntegralError", "PadicCyc", "ParameterError",
           "PrecisionError", "QExpansion"]
