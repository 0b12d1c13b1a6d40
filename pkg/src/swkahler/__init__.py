"""Exact Seiberg-Witten combinatorics for Kähler surfaces."""

from .errors import DomainError, MalformedInput

__version__ = "0.1.0"

__all__ = ["DomainError", "MalformedInput", "__version__"]
