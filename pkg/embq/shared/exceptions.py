"""
Exception Framework
===================

Exception hierarchy shared by every embq module, plus the handler that turns
any exception into a CLI exit code and a standardized error envelope.
"""

import logging
import traceback
from typing import Optional, Tuple

logger = logging.getLogger(__name__)

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class EmbqException(Exception):
    """Base exception class for all embq errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_USAGE,
        error_code: str = None,
        details: dict = None
    ):
        """
        Initialize embq exception.

        Args:
            message: Human-readable error message
            exit_code: Process exit code the CLI reports
            error_code: Machine-readable error code
            details: Additional error details
        """
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code or f"ERR_{exit_code}"
        self.details = details or {}
        super().__init__(self.message)


class ValidationException(EmbqException):
    """Exception for malformed inputs (structures, registries, formulas)."""

    def __init__(self, message: str, details: dict = None):
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code="VALIDATION_ERROR",
            details=details
        )


class NotFoundException(EmbqException):
    """Exception for a missing element, symbol, quantifier or file."""

    def __init__(self, resource: str, identifier: str = None):
        message = f"{resource} not found"
        if identifier:
            message += f": {identifier}"
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code="NOT_FOUND",
            details={"resource": resource, "identifier": identifier}
        )


class VocabularyMismatchException(EmbqException):
    """Exception for operations on structures over different vocabularies."""

    def __init__(self, message: str, details: dict = None):
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code="VOCABULARY_MISMATCH",
            details=details
        )


class FormulaSyntaxException(EmbqException):
    """Exception for formula and profile parse errors, with a source position."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(
            message=f"{message}{where}",
            exit_code=EXIT_USAGE,
            error_code="SYNTAX_ERROR",
            details={"line": line, "column": column}
        )


class ResourceCapExceeded(EmbqException):
    """Exception raised when a search would exceed a configured cap."""

    def __init__(self, cap: str, limit: int, requested: int = None):
        message = f"{cap} cap exceeded: limit {limit}"
        if requested is not None:
            message += f", requested {requested}"
        super().__init__(
            message=message,
            exit_code=EXIT_CAP,
            error_code="CAP_EXCEEDED",
            details={"cap": cap, "limit": limit, "requested": requested}
        )


class NotQuasiHomogeneousException(EmbqException):
    """Exception for elimination requests on structures that fail the checker."""

    def __init__(self, left: tuple, right: tuple):
        super().__init__(
            message=(
                f"structure is not quasi-homogeneous: {list(left)} and {list(right)} "
                f"share an atomic type but no self-embedding maps one to the other"
            ),
            exit_code=EXIT_USAGE,
            error_code="NOT_QUASI_HOMOGENEOUS",
            details={"left": list(left), "right": list(right)}
        )


class ChainTooShortException(EmbqException):
    """Exception raised when a finite chain does not witness stabilization."""

    def __init__(self, subformula: str, index: int):
        super().__init__(
            message=f"chain too short to witness stabilization of {subformula}",
            exit_code=EXIT_NEGATIVE,
            error_code="CHAIN_TOO_SHORT",
            details={"subformula": subformula, "last_change": index}
        )


class VerificationFailure(EmbqException):
    """Exception raised when a computed result fails its own verification."""

    def __init__(self, message: str, details: dict = None):
        super().__init__(
            message=message,
            exit_code=EXIT_USAGE,
            error_code="VERIFICATION_FAILURE",
            details=details
        )


def global_exception_handler(exc: Exception) -> Tuple[int, dict]:
    """
    Global exception handler for the command-line entry point.

    Returns:
        Tuple of (exit_code, standardized error payload)
    """
    if isinstance(exc, EmbqException):
        logger.info(f"{type(exc).__name__}: {exc.message}")
        return exc.exit_code, {
            "error": {
                "code": exc.error_code,
                "message": exc.message,
                "details": exc.details
            }
        }

    if isinstance(exc, (OSError, ValueError)):
        logger.warning(f"Input error: {type(exc).__name__}: {str(exc)}")
        return EXIT_USAGE, {
            "error": {
                "code": "INPUT_ERROR",
                "message": str(exc),
                "details": {"type": type(exc).__name__}
            }
        }

    logger.error(
        f"Unhandled exception: {type(exc).__name__}: {str(exc)}\n"
        f"Traceback: {traceback.format_exc()}"
    )
    return EXIT_USAGE, {
        "error": {
            "code": "INTERNAL_ERROR",
            "message": "An internal error occurred",
            "details": {"type": type(exc).__name__}
        }
    }
