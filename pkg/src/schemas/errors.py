"""
Error schemas and exception hierarchy.

Code-first definitions that serve two purposes:
1. Exceptions raised by the library (parsing, solver preconditions, caps)
2. Structured error payloads the CLI prints as a single machine-readable line

Every exception carries an `ErrorCode` so callers can map failures to exit
codes without string matching.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel


class ErrorCode(str, Enum):
    """Standardized error codes"""

    INPUT_ERROR = "INPUT_ERROR"
    PARSE_ERROR = "PARSE_ERROR"
    PRECONDITION_FAILED = "PRECONDITION_FAILED"
    SIZE_CAP_EXCEEDED = "SIZE_CAP_EXCEEDED"
    NO_EXACT_METHOD = "NO_EXACT_METHOD"
    VERIFICATION_FAILED = "VERIFICATION_FAILED"
    INVARIANT_VIOLATION = "INVARIANT_VIOLATION"


class ErrorDetails(BaseModel):
    """Structured error response"""

    code: ErrorCode
    message: str
    details: Optional[Dict[str, Any]] = None


class ErrorResponse(BaseModel):
    """Standard error response wrapper"""

    error: ErrorDetails


class RainbowError(Exception):
    """Base class for all toolkit errors.

    Parameters
    ----------
    message : str
        Human-readable description.
    details : dict, optional
        Extra machine-readable context (line numbers, sizes, witnesses).
    """

    code: ErrorCode = ErrorCode.INPUT_ERROR

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_response(self) -> ErrorResponse:
        """Wrap this error into the structured response model."""
        return ErrorResponse(
            error=ErrorDetails(
                code=self.code, message=self.message, details=self.details or None
            )
        )


class InstanceParseError(RainbowError, ValueError):
    """Malformed instance, solution or key-value document."""

    code = ErrorCode.PARSE_ERROR

    def __init__(self, message: str, line: Optional[int] = None):
        text = f"{message} at line {line}" if line is not None else message
        super().__init__(text, {"line": line} if line is not None else None)
        self.line = line


class PreconditionError(RainbowError, ValueError):
    """Input lies outside the class an operation is defined on."""

    code = ErrorCode.PRECONDITION_FAILED


class SizeCapExceeded(RainbowError):
    """Instance is larger than the configured brute-force cap."""

    code = ErrorCode.SIZE_CAP_EXCEEDED


class NoExactMethodError(RainbowError):
    """No exact solver applies and the instance is above the oracle cap."""

    code = ErrorCode.NO_EXACT_METHOD


class VerificationError(RainbowError):
    """A certificate identity or structural claim did not hold."""

    code = ErrorCode.VERIFICATION_FAILED


class InvariantViolation(RainbowError, AssertionError):
    """An internal invariant that the theory guarantees was violated."""

    code = ErrorCode.INVARIANT_VIOLATION


class UsageError(RainbowError):
    """Command-line flags are missing, unknown or conflicting."""

    code = ErrorCode.INPUT_ERROR
