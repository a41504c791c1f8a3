"""
Surface Parameters and Admissibility

Validates (N, A, lambda1, lambda2) against the coprimality condition, the
range assumption on A and the exclusions defining the open parameter set
T0, collecting every violated constraint.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple, Union

from src.utils.error_handler import ParameterError
from src.utils.logger import get_logger

logger = get_logger(__name__)

LambdaInput = Union[str, int, float, Fraction]


@dataclass(frozen=True)
class SurfaceParams:
    """Validated surface parameters; lambdas are exact rationals."""

    N: int
    A: int
    lambda1: Fraction
    lambda2: Fraction

    @property
    def order(self) -> int:
        return 2 * self.N

    def to_dict(self) -> Dict[str, object]:
        return {
            "N": self.N,
            "A": self.A,
            "lambda1": str(self.lambda1),
            "lambda2": str(self.lambda2),
        }

    def swapped(self) -> "SurfaceParams":
        """(N, N - A, lambda2, lambda1): the mirror point of the construction."""
        return SurfaceParams(self.N, self.N - self.A, self.lambda2, self.lambda1)


def parse_lambda(value: LambdaInput) -> Fraction:
    """
    Parse an exact rational ("1/2") or a decimal literal ("0.25") exactly.

    Raises:
        ParameterError: if the value is not a rational literal
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ParameterError([f"lambda value {value!r} is not a rational literal"])


def pair_violations(N: int, A: int, for_rank: bool = False) -> List[str]:
    """Violated constraints on (N, A); empty when admissible."""
    violations = []
    if N < 2:
        violations.append(f"N = {N} must be at least 2")
        return violations
    if gcd(N, A) != 1:
        violations.append(f"gcd(N, A) = gcd({N}, {A}) = {gcd(N, A)} must be 1")
    if 3 * A < N + 1:
        violations.append(f"A = {A} < (N+1)/3 = {Fraction(N + 1, 3)} (range assumption)")
    if 3 * A > 2 * N - 1:
        violations.append(f"A = {A} > (2N-1)/3 = {Fraction(2 * N - 1, 3)} (range assumption)")
    if for_rank and N == 2:
        violations.append("N = 2 is excluded by the independence hypothesis N != 2")
    return violations


def t0_violations(lambda1: Fraction, lambda2: Fraction) -> List[str]:
    """Violated open-set conditions on (lambda1, lambda2)."""
    violations = []
    for name, lam in (("lambda1", lambda1), ("lambda2", lambda2)):
        if not 0 < lam < 1:
            violations.append(f"{name} = {lam} must lie in (0, 1)")
    if violations:
        return violations
    excluded = {
        "lambda2": lambda2,
        "1 - lambda2": 1 - lambda2,
        "1/lambda2": 1 / lambda2,
        "1/(1 - lambda2)": 1 / (1 - lambda2),
        "(lambda2 - 1)/lambda2": (lambda2 - 1) / lambda2,
        "lambda2/(lambda2 - 1)": lambda2 / (lambda2 - 1),
    }
    for label, value in excluded.items():
        if lambda1 == value:
            violations.append(f"lambda1 = {lambda1} equals {label} = {value}, outside T0")
    return violations


def validate_pair(N: int, A: int, for_rank: bool = False) -> None:
    """Raise ParameterError listing every violated (N, A) constraint."""
    violations = pair_violations(N, A, for_rank)
    if violations:
        raise ParameterError(violations)


def cli_validate(
    N: int,
    A: int,
    lambda1: LambdaInput = "1/2",
    lambda2: LambdaInput = "1/4",
    for_rank: bool = False,
) -> SurfaceParams:
    """
    Validate the full parameter set.

    Args:
        N: cover degree
        A: branch exponent
        lambda1: first parameter (exact rational or decimal literal)
        lambda2: second parameter
        for_rank: additionally require N != 2

    Returns:
        SurfaceParams

    Raises:
        ParameterError: naming each violated constraint
    """
    l1 = parse_lambda(lambda1)
    l2 = parse_lambda(lambda2)
    violations = pair_violations(N, A, for_rank) + t0_violations(l1, l2)
    if violations:
        logger.debug(f"rejected parameters N={N} A={A} l1={l1} l2={l2}: {violations}")
        raise ParameterError(violations)
    return SurfaceParams(N, A, l1, l2)


def admissible_A(N: int) -> List[int]:
    """All A with gcd(N, A) = 1 and (N+1)/3 <= A <= (2N-1)/3."""
    return [A for A in range(1, N) if not pair_violations(N, A)]


def admissible_pairs(max_N: int, min_N: int = 2) -> List[Tuple[int, int]]:
    return [(N, A) for N in range(min_N, max_N + 1) for A in admissible_A(N)]


def random_admissible_point(
    N: int,
    A: int,
    rng: random.Random,
    denominator: int = 20,
    min_gap: Fraction = Fraction(1, 10),
    attempts: int = 1000,
) -> SurfaceParams:
    """
    Random exact point of T0 with both lambdas on the grid 1/denominator and
    |lambda1 - lambda2| >= min_gap.
    """
    validate_pair(N, A)
    for _ in range(attempts):
        l1 = Fraction(rng.randint(1, denominator - 1), denominator)
        l2 = Fraction(rng.randint(1, denominator - 1), denominator)
        if abs(l1 - l2) < min_gap or t0_violations(l1, l2):
            continue
        return SurfaceParams(N, A, l1, l2)
    raise ParameterError([f"no admissible point found in {attempts} attempts"])


def params_from_defaults(defaults, N: Optional[int] = None, A: Optional[int] = None,
                         lambda1: Optional[str] = None, lambda2: Optional[str] = None,
                         for_rank: bool = False) -> SurfaceParams:
    """Merge explicit values over a DefaultsConfig and validate."""
    return cli_validate(
        N if N is not None else defaults.N,
        A if A is not None else defaults.A,
        lambda1 if lambda1 is not None else defaults.lambda1,
        lambda2 if lambda2 is not None else defaults.lambda2,
        for_rank=for_rank,
    )
