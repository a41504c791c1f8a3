"""
Test script for the Picard-Fuchs operators.

Tests:
- Operator construction and hypergeometric parameters
- Exact x-derivative certificates with a corrupted negative control
- Operator conjugation by the group action
- One-dimensional reduction and its closed forms
- Truncated series in the kernel
"""

from fractions import Fraction

from src.algebra.kummer import KummerElem
from src.algebra.ratfunc import RatFunc
from src.backend.checks import conjugation_elements
from src.backend.pf_operator import (
    hypergeometric_parameters,
    onedim_has_pole_on_diagonal,
    pf_certificate_identity,
    pf_apply,
    pf_make,
    pf_onedim_reduction,
    pf_series_kernel_check,
    pf_verify_conjugation,
)
from src.utils.error_handler import ParameterError, StructuralError


def test_operator_construction():
    """Test the coefficients of D_l1 and D_l2."""
    print("\n" + "=" * 60)
    print("Test 1: Operator Construction")
    print("=" * 60)

    N, A = 5, 2
    D = pf_make("l1", N, A)
    l1 = RatFunc.var("l1", 2 * N)
    assert D.a == l1 * (1 - l1)
    assert D.b == (Fraction(3, 5) - l1) * 2
    assert D.c == RatFunc.const(Fraction(-6, 25), 2 * N)

    assert hypergeometric_parameters("l1", N, A) == (Fraction(2, 5), Fraction(3, 5), Fraction(6, 5))
    assert hypergeometric_parameters("l2", N, A) == (Fraction(2, 5), Fraction(3, 5), Fraction(4, 5))

    # constants are not annihilated
    one = KummerElem.one(N, A)
    assert D.apply(one) == one.scale(D.c)
    assert pf_apply(D, one) == D.apply(one)

    try:
        pf_make("x", N, A)
        assert False
    except StructuralError:
        print("✅ Operator variable must be l1 or l2")

    try:
        pf_make("l1", 10, 7)
        assert False
    except ParameterError:
        print("✅ Inadmissible (N, A) rejected")
    print(f"✅ D_l1 = {D}")


def test_certificate_identity():
    """Test D(f) = dH/dx exactly and that a corrupted H fails."""
    print("\n" + "=" * 60)
    print("Test 2: Certificate Identity")
    print("=" * 60)

    for N, A in [(5, 2), (5, 3), (7, 3), (8, 5)]:
        result = pf_certificate_identity(N, A, negative_control=True)
        assert result.holds
        assert result.mirror_holds
        assert result.corrupted_fails
        assert result.passed
        print(f"✅ ({N}, {A}): certificate holds, corrupted coefficient fails")


def test_operator_conjugation():
    """Test chi D chi^-1 = delta^-1 D^g on kernel elements and tau, tau'."""
    print("\n" + "=" * 60)
    print("Test 3: Operator Conjugation")
    print("=" * 60)

    for N, A in [(5, 2), (7, 4)]:
        for var in ("l1", "l2"):
            D = pf_make(var, N, A)
            for g in conjugation_elements(N, A):
                assert pf_verify_conjugation(D, g), f"conjugation fails for {var} at {g}"
        print(f"✅ ({N}, {A}): conjugation holds for both operators")


def test_onedim_reduction():
    """Test the antiderivatives and the closed forms on [0, 1]."""
    print("\n" + "=" * 60)
    print("Test 4: One-Dimensional Reduction")
    print("=" * 60)

    for N, A in [(5, 2), (7, 3)]:
        result = pf_onedim_reduction(N, A)
        assert result.antiderivative_holds
        assert result.mirror_holds
        assert result.endpoints_match
        assert result.passed
        assert "closed_form" in result.to_dict()
    assert onedim_has_pole_on_diagonal(5, 2)
    print("✅ Antiderivatives verified and endpoints give the closed forms")


def test_series_kernel():
    """Test that the 2F1 truncation cancels below degree M - 1."""
    print("\n" + "=" * 60)
    print("Test 5: Series Kernel")
    print("=" * 60)

    for var in ("l1", "l2"):
        result = pf_series_kernel_check(var, 5, 2, M=10)
        assert result["cancelled"]
        assert result["lowest_degree"] == 9
        assert result["passed"]

    wrong = pf_series_kernel_check("l1", 5, 2, M=10, c_shift=Fraction(1))
    assert not wrong["passed"]
    print("✅ Truncation remainder starts at degree M - 1; shifted c fails")


if __name__ == "__main__":
    print("=" * 60)
    print("Picard-Fuchs Operator Tests")
    print("=" * 60)

    try:
        test_operator_construction()
        test_certificate_identity()
        test_operator_conjugation()
        test_onedim_reduction()
        test_series_kernel()

        print("\n" + "=" * 60)
        print("✅ All Picard-Fuchs Operator Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
