"""Exact chamber counts, the eta-star invariant, and sign-matrix statistics."""

__version__ = "0.1.0"

from .errors import BudgetExhausted, ConfigurationError, InvariantViolation
from .projective import Configuration, ProjectivePoint, canonicalize, generate_En

__all__ = ["__version__", "BudgetExhausted", "ConfigurationError", "InvariantViolation",
           "Configuration", "ProjectivePoint", "canonicalize", "generate_En"]
