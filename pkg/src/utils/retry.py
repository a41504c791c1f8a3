"""
Rerun helpers.

``retry`` reruns an operation at once after a transient failure, such as an
OSError while writing a report. ``escalate_precision`` is the numeric
variant: it reruns a quadrature or series routine with a finer
``QuadratureSpec``.
"""

import functools
import inspect
from typing import Any, Callable, Optional, Tuple, Type

from src.utils.error_handler import QuadratureError, SeriesConvergenceError
from src.utils.logger import get_logger

Exceptions = Tuple[Type[Exception], ...]

NEVER_RERUN: Exceptions = (ValueError, TypeError, KeyError, AttributeError)


def _reruns(e: Exception, only: Optional[Exceptions], never: Exceptions) -> bool:
    if isinstance(e, never):
        return False
    return only is None or isinstance(e, only)


def retry(
    max_retries: int = 3,
    retryable_exceptions: Optional[Exceptions] = None,
    non_retryable_exceptions: Exceptions = NEVER_RERUN,
):
    """
    Rerun the decorated function up to max_retries more times.

    Args:
        max_retries: Reruns after the first attempt
        retryable_exceptions: Only these are rerun; None means everything
            outside non_retryable_exceptions
        non_retryable_exceptions: Raised on the first occurrence

    Example:
        @retry(max_retries=2, retryable_exceptions=(OSError,))
        def write_report(path, text):
            ...
    """
    def decorator(func: Callable) -> Callable:
        logger = get_logger(func.__module__)
        attempts = max_retries + 1

        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            for attempt in range(1, attempts + 1):
                try:
                    return func(*args, **kwargs)
                except Exception as e:
                    if not _reruns(e, retryable_exceptions, non_retryable_exceptions):
                        logger.debug(f"{func.__name__} raised {type(e).__name__}; not rerun")
                        raise
                    if attempt == attempts:
                        logger.error(f"{func.__name__} failed {attempts} times: {e}")
                        raise
                    logger.warning(f"{func.__name__} failed ({attempt}/{attempts}): {e}; rerunning")

        return wrapper
    return decorator


def escalate_precision(
    steps: Optional[int] = None,
    extra_digits: Optional[int] = None,
    extra_levels: int = 1,
    exceptions: Exceptions = (QuadratureError, SeriesConvergenceError),
):
    """
    Rerun a numeric routine with a finer spec when it fails to converge.

    The wrapped function must accept a ``spec`` argument exposing
    ``escalated(extra_digits, extra_levels)`` and, optionally,
    ``escalation_steps`` / ``escalation_digits`` defaults.

    Args:
        steps: Number of escalations (default: spec.escalation_steps)
        extra_digits: Digits added per escalation (default: spec.escalation_digits)
        extra_levels: Refinement levels added per escalation
        exceptions: Exception types that trigger an escalation

    Example:
        @escalate_precision()
        def nq_period(p, spec):
            ...
    """
    def decorator(func: Callable) -> Callable:
        logger = get_logger(func.__module__)
        signature = inspect.signature(func)

        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            bound = signature.bind(*args, **kwargs)
            bound.apply_defaults()
            spec = bound.arguments.get("spec")
            if spec is None:
                return func(*args, **kwargs)

            n_steps = steps if steps is not None else getattr(spec, "escalation_steps", 0)
            digits = extra_digits if extra_digits is not None else getattr(spec, "escalation_digits", 20)

            for attempt in range(n_steps + 1):
                try:
                    return func(*bound.args, **bound.kwargs)
                except exceptions as e:
                    if attempt >= n_steps:
                        logger.error(f"{func.__name__} did not converge after {attempt + 1} attempts: {e}")
                        raise
                    spec = spec.escalated(digits, extra_levels)
                    bound.arguments["spec"] = spec
                    logger.warning(
                        f"{func.__name__} did not converge (attempt {attempt + 1}/{n_steps + 1}): {e}. "
                        f"Escalating to {spec.precision} digits, level {spec.max_level}"
                    )

        return wrapper
    return decorator
