"""
Test script for parameter validation.

Tests:
- Admissible A per N
- Violations collected, not short-circuited
- Open-set exclusions on (lambda1, lambda2)
- Exact lambda parsing
- Random admissible points
"""

import random
from fractions import Fraction

from src.backend.params import (
    SurfaceParams,
    admissible_A,
    admissible_pairs,
    cli_validate,
    parse_lambda,
    random_admissible_point,
    t0_violations,
)
from src.utils.error_handler import ParameterError


def test_admissible_A():
    """Test the admissible A lists for small N."""
    print("\n" + "=" * 60)
    print("Test 1: Admissible A")
    print("=" * 60)

    assert admissible_A(2) == [1]
    assert admissible_A(3) == []
    assert admissible_A(4) == []
    assert admissible_A(5) == [2, 3]
    assert admissible_A(7) == [3, 4]
    assert admissible_A(8) == [3, 5]
    assert admissible_A(10) == []
    assert (5, 2) in admissible_pairs(8)
    assert all(N >= 3 for N, _ in admissible_pairs(8, min_N=3))
    print("✅ admissible_A(5) = [2, 3], admissible_A(10) = []")


def test_collected_violations():
    """Test that every violated constraint is reported."""
    print("\n" + "=" * 60)
    print("Test 2: Collected Violations")
    print("=" * 60)

    cli_validate(5, 2)
    cli_validate(2, 1)

    try:
        cli_validate(10, 7)
        assert False, "(10, 7) violates the range assumption"
    except ParameterError as e:
        assert any("(2N-1)/3" in v for v in e.violations)

    try:
        cli_validate(6, 2, "3/2", "1/4")
        assert False
    except ParameterError as e:
        assert any("gcd" in v for v in e.violations)
        assert any("lambda1" in v for v in e.violations)
        assert len(e.violations) >= 2
        print(f"✅ Violations: {e.violations}")

    try:
        cli_validate(2, 1, for_rank=True)
        assert False, "N = 2 is excluded for rank certificates"
    except ParameterError as e:
        assert any("N = 2" in v for v in e.violations)
    print("✅ All violations are collected")


def test_open_set_exclusions():
    """Test the six excluded images of lambda2."""
    print("\n" + "=" * 60)
    print("Test 3: Open-Set Exclusions")
    print("=" * 60)

    l2 = Fraction(1, 4)
    assert t0_violations(Fraction(1, 4), l2)
    assert t0_violations(Fraction(3, 4), l2)
    assert not t0_violations(Fraction(1, 2), l2)
    assert t0_violations(Fraction(0), l2)
    assert t0_violations(Fraction(1, 2), Fraction(1))
    print("✅ lambda1 = lambda2 and lambda1 = 1 - lambda2 are excluded")


def test_lambda_parsing():
    """Test exact rationals and decimal literals."""
    print("\n" + "=" * 60)
    print("Test 4: Lambda Parsing")
    print("=" * 60)

    assert parse_lambda("1/2") == Fraction(1, 2)
    assert parse_lambda("0.25") == Fraction(1, 4)
    assert parse_lambda(0.1) == Fraction(1, 10)
    try:
        parse_lambda("half")
        assert False
    except ParameterError:
        print("✅ Non-rational literal rejected")

    params = cli_validate(5, 2, "1/3", "0.2")
    assert params == SurfaceParams(5, 2, Fraction(1, 3), Fraction(1, 5))
    assert params.swapped() == SurfaceParams(5, 3, Fraction(1, 5), Fraction(1, 3))
    assert params.to_dict()["lambda1"] == "1/3"
    print("✅ Lambdas parse exactly")


def test_random_points():
    """Test that random points are admissible and reproducible."""
    print("\n" + "=" * 60)
    print("Test 5: Random Admissible Points")
    print("=" * 60)

    first = [random_admissible_point(7, 3, random.Random(4)) for _ in range(3)]
    second = [random_admissible_point(7, 3, random.Random(4)) for _ in range(3)]
    assert first == second

    rng = random.Random(0)
    for _ in range(50):
        p = random_admissible_point(5, 2, rng)
        assert not t0_violations(p.lambda1, p.lambda2)
        assert abs(p.lambda1 - p.lambda2) >= Fraction(1, 10)
    print("✅ 50 random points lie in the open set")


if __name__ == "__main__":
    print("=" * 60)
    print("Parameter Validation Tests")
    print("=" * 60)

    try:
        test_admissible_A()
        test_collected_violations()
        test_open_set_exclusions()
        test_lambda_parsing()
        test_random_points()

        print("\n" + "=" * 60)
        print("✅ All Parameter Validation Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
