"""
Utility modules for the chowcheck toolkit.

Includes logging, error handling, retry and precision escalation.
"""

from src.utils.logger import get_logger, log_performance, log_timing, set_console_level
from src.utils.retry import retry, escalate_precision
from src.utils.error_handler import (
    ChowcheckError,
    ErrorHandler,
    ErrorType,
    get_error_handler,
    handle_error
)

__all__ = [
    "get_logger",
    "log_performance",
    "log_timing",
    "set_console_level",
    "retry",
    "escalate_precision",
    "ChowcheckError",
    "ErrorHandler",
    "ErrorType",
    "get_error_handler",
    "handle_error",
]
