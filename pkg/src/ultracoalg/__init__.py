"""Nonarchimedean coalgebras, comodules and their limit systems at finite truncation."""

from .errors import (
    ConfigInvalid,
    DivisionByZeroOrImprecise,
    InsufficientPrecision,
    NotACoalgebraMorphism,
    NotACoideal,
    NotAComoduleMorphism,
    NotAModuleAction,
    NotAnInterleaving,
    PrecisionExhausted,
    PrimeMismatch,
    SourceCheckFailed,
    SpaceMismatch,
    UltracoalgError,
)
from .scalar import PadicScalar, arith, eq_to_precision, valuation_norm

__version__ = "0.1.0"
