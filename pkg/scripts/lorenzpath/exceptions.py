#!/usr/bin/env python3
"""
Custom lorenzpath Exceptions

Purpose: one exception hierarchy so the CLI can map failures to exit codes
"""

from typing import Sequence


class LorenzPathError(Exception):
    """Base exception for all lorenzpath errors."""
    pass


class ValidationError(LorenzPathError):
    """Exceptions related to input validation."""
    pass


class GraphValidationError(ValidationError):
    """A scenario graph broke one or more structural rules."""

    def __init__(self, violations: Sequence[str]):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations) or "invalid graph")


class WeightValidationError(ValidationError):
    """OWA weights violate the strict decrease / positivity condition."""
    pass


class DimensionError(ValidationError, ValueError):
    """Two vectors (or a vector and a weight set) have different lengths."""
    pass


class TransferError(ValidationError):
    """Inadmissible Pigou-Dalton transfer."""
    pass


class GeneratorError(ValidationError):
    """Instance generator parameters out of range."""
    pass


class PathError(LorenzPathError):
    """Arc sequence is not a connected walk from the source."""
    pass


class CyclicGraphError(LorenzPathError):
    """Search or enumeration refused on a cyclic graph it cannot handle."""
    pass


class EnumerationLimitError(LorenzPathError):
    """Exhaustive enumeration went past its path cap."""
    pass


class FileAccessError(LorenzPathError):
    """Exceptions related to file access issues."""
    pass


class ConfigurationError(LorenzPathError):
    """Exceptions related to configuration issues."""
    pass
