"""
Error types, classification and recovery hints.

All toolkit failures derive from ChowcheckError. The handler classifies
exceptions so the check runner can decide whether a numeric retry at
higher precision makes sense and what to put in the report.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.utils.logger import get_logger


class ChowcheckError(Exception):
    """Base class for toolkit errors."""


class StructuralError(ChowcheckError):
    """Operands live in different fields or algebras."""


class FieldDivisionError(ChowcheckError, ZeroDivisionError):
    """Inverse of zero in an exact field or function field."""


class PoleError(ChowcheckError):
    """Evaluation or substitution hit a vanishing denominator."""

    def __init__(self, message: str, denominator: Optional[str] = None):
        super().__init__(message)
        self.denominator = denominator


class ParameterError(ChowcheckError, ValueError):
    """Surface parameters violate an admissibility constraint."""

    def __init__(self, violations: List[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class HypothesisError(ChowcheckError):
    """A certificate was requested outside the hypothesis it needs."""


class QuadratureError(ChowcheckError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class SeriesConvergenceError(ChowcheckError):
    """A power series ran out of its term budget before the tail bound was met."""


class ErrorType(Enum):
    """What went wrong, as far as the runner is concerned."""
    NUMERICAL = "numerical"    # non-convergence; a finer spec may help
    ALGEBRAIC = "algebraic"    # structural mismatch or division by zero
    PARAMETER = "parameter"
    HYPOTHESIS = "hypothesis"  # certificate requested outside its hypothesis
    RESOURCE = "resource"      # memory or process pool
    UNKNOWN = "unknown"


# exception type -> classification; looked up along the exception's MRO
CLASSIFICATIONS: Dict[type, ErrorType] = {
    QuadratureError: ErrorType.NUMERICAL,
    SeriesConvergenceError: ErrorType.NUMERICAL,
    ParameterError: ErrorType.PARAMETER,
    HypothesisError: ErrorType.HYPOTHESIS,
    StructuralError: ErrorType.ALGEBRAIC,
    FieldDivisionError: ErrorType.ALGEBRAIC,
    PoleError: ErrorType.ALGEBRAIC,
    ZeroDivisionError: ErrorType.ALGEBRAIC,
    TypeError: ErrorType.ALGEBRAIC,
    ValueError: ErrorType.PARAMETER,
    MemoryError: ErrorType.RESOURCE,
    OSError: ErrorType.RESOURCE,
}

# fallback for foreign exceptions, matched against the lower-cased message
KEYWORDS: List[Tuple[ErrorType, Tuple[str, ...]]] = [
    (ErrorType.NUMERICAL, ("converge", "precision", "tolerance")),
    (ErrorType.ALGEBRAIC, ("pole", "denominator", "mismatch")),
    (ErrorType.PARAMETER, ("invalid", "gcd", "range")),
]

HINTS: Dict[ErrorType, str] = {
    ErrorType.NUMERICAL: "Raise --precision or numerics.max_level, or relax --tolerance",
    ErrorType.ALGEBRAIC: "Check that operands share (N, A) and avoid excluded parameter loci",
    ErrorType.PARAMETER: "Choose N, A, lambda1, lambda2 satisfying the admissibility constraints",
    ErrorType.HYPOTHESIS: "Rank certificates require N != 2",
    ErrorType.RESOURCE: "Reduce --jobs or free memory",
    ErrorType.UNKNOWN: "See logs/chowcheck.log for the traceback",
}

SERIES_HINT = "Move lambda away from 1 or raise numerics.hyp2f1_max_terms"


class ErrorHandler:
    """Classifies exceptions for the check runner and attaches a recovery hint."""

    def __init__(self):
        self.logger = get_logger(__name__)

    def classify_error(self, error: Exception) -> ErrorType:
        for cls in type(error).__mro__:
            if cls in CLASSIFICATIONS:
                return CLASSIFICATIONS[cls]
        text = str(error).lower()
        for error_type, words in KEYWORDS:
            if any(word in text for word in words):
                return error_type
        return ErrorType.UNKNOWN

    def is_retryable(self, error: Exception) -> bool:
        """Only numerical non-convergence benefits from a rerun."""
        return self.classify_error(error) == ErrorType.NUMERICAL

    def get_recovery_strategy(self, error: Exception) -> str:
        if isinstance(error, SeriesConvergenceError):
            return SERIES_HINT
        return HINTS[self.classify_error(error)]

    def create_error_message(self, error: Exception, context: Optional[Dict] = None) -> str:
        """
        One line: "Error: T | Message: m | Type: t | Context: k=v, ... | Recovery: hint".
        """
        parts = [
            f"Error: {type(error).__name__}",
            f"Message: {error}",
            f"Type: {self.classify_error(error).value}",
        ]
        if context:
            parts.append("Context: " + ", ".join(f"{k}={v}" for k, v in context.items()))
        parts.append(f"Recovery: {self.get_recovery_strategy(error)}")
        return " | ".join(parts)


_error_handler: Optional[ErrorHandler] = None


def get_error_handler() -> ErrorHandler:
    global _error_handler
    if _error_handler is None:
        _error_handler = ErrorHandler()
    return _error_handler


def handle_error(
    error: Exception,
    context: Optional[Dict] = None,
    logger: Optional[Any] = None
) -> Dict[str, Any]:
    """
    Classify an error and log it: rejected input, refused hypotheses and
    numerical non-convergence at WARNING, everything else at ERROR.

    Returns:
        {"error_type", "is_retryable", "recovery_strategy", "message", "exception"}
    """
    handler = get_error_handler()
    logger = logger or get_logger()

    error_type = handler.classify_error(error)
    retryable = error_type == ErrorType.NUMERICAL
    message = handler.create_error_message(error, context)

    if retryable or error_type in (ErrorType.PARAMETER, ErrorType.HYPOTHESIS):
        logger.warning(message)
    else:
        logger.error(message)

    return {
        "error_type": error_type,
        "is_retryable": retryable,
        "recovery_strategy": handler.get_recovery_strategy(error),
        "message": message,
        "exception": error,
    }
