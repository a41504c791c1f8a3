"""
Factory Functions for Component Creation

Provides factory functions for creating components with dependency injection.
"""

from typing import Optional

from src.backend.check_handler import CheckContext, CheckHandler
from src.backend.checks import register_default_checks
from src.backend.numerics import QuadratureSpec
from src.config import ToolkitConfig, get_config


def create_quadrature_spec(
    config: Optional[ToolkitConfig] = None,
    tolerance: Optional[float] = None
) -> QuadratureSpec:
    """
    Factory function to create quadrature settings.

    Args:
        config: ToolkitConfig object (uses default if not provided)
        tolerance: Overrides numerics.tolerance

    Returns:
        QuadratureSpec instance
    """
    if config is None:
        config = get_config()
    return QuadratureSpec.from_config(config.numerics, tolerance)


def create_check_handler() -> CheckHandler:
    """
    Factory function to create a check handler with every check registered.

    Returns:
        CheckHandler instance
    """
    return register_default_checks(CheckHandler())


def create_check_context(
    config: Optional[ToolkitConfig] = None,
    N: Optional[int] = None,
    A: Optional[int] = None,
    lambda1: Optional[str] = None,
    lambda2: Optional[str] = None,
    seed: Optional[int] = None,
    finite_differences: Optional[bool] = None
) -> CheckContext:
    """
    Factory function to create a check context.

    Omitted values come from the defaults and verification sections.

    Args:
        config: ToolkitConfig object (uses default if not provided)
        N, A, lambda1, lambda2: Surface parameters
        seed: Random seed
        finite_differences: Run the finite-difference sweep

    Returns:
        CheckContext instance (not yet validated)
    """
    if config is None:
        config = get_config()
    defaults = config.defaults
    return CheckContext(
        N=defaults.N if N is None else N,
        A=defaults.A if A is None else A,
        lambda1=defaults.lambda1 if lambda1 is None else str(lambda1),
        lambda2=defaults.lambda2 if lambda2 is None else str(lambda2),
        config=config,
        seed=config.verification.seed if seed is None else seed,
        finite_differences=(
            config.numerics.finite_difference_check if finite_differences is None else finite_differences
        ),
    )
