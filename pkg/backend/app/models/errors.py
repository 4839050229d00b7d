"""
Exception hierarchy shared by the library, the CLI and the HTTP layer.
"""
from typing import Optional


class NpnError(Exception):
    """Base class for every error raised by the classification toolkit."""


class TruthTableError(NpnError, ValueError):
    """Malformed truth-table text, bad input count or size mismatch."""


class TransformError(NpnError, ValueError):
    """An NPN transform that is not a valid group element for the table."""


class MethodError(NpnError, ValueError):
    """A canonicalization method asked to do something it cannot."""


class AigerError(NpnError, ValueError):
    """Malformed or unsupported AIGER input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvariantViolation(NpnError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
