"""Exact computations with restricted Lie algebras of Cartan type over F_p."""

from .truncpoly import FpScalar, TruncPoly, substitute
from .witt import Derivation, DiffForm, witt_algebra

__version__ = "0.1.0"

__all__ = ["FpScalar", "TruncPoly", "substitute", "Derivation", "DiffForm", "witt_algebra"]
