"""
Test script for the multiprecision numerics.

Tests:
- Quadrature settings validation
- tanh-sinh against a Beta integral with endpoint singularities
- 2F1 series against mpmath and the homogeneous residual
- One-dimensional reduction by quadrature
- Inhomogeneous Picard-Fuchs residuals at the configured settings
- Iterated period against nested quadrature
- D-images of the normal function on every sheet
- Per-point compilation and pole handling
"""

import random
from fractions import Fraction

import mpmath

from src.backend.numerics import (
    PeriodIntegrand,
    QuadratureSpec,
    _endpoint_guard,
    nq_beta_reference,
    nq_hyp2f1,
    nq_normal_function_value,
    nq_onedim_check,
    nq_pf_homogeneous_residual,
    nq_period,
    nq_pf_inhomogeneous_residual,
    nq_tanh_sinh,
)
from src.backend.params import random_admissible_point
from src.backend.pf_operator import certificate_integrand
from src.backend.rank_certificates import direct_image
from src.config.config_schema import ToolkitConfig
from src.utils.error_handler import ParameterError, PoleError

SPEC = QuadratureSpec(tolerance=1e-10, max_level=7, precision=30)


def test_quadrature_spec():
    """Test tolerance validation and escalation."""
    print("\n" + "=" * 60)
    print("Test 1: Quadrature Settings")
    print("=" * 60)

    try:
        QuadratureSpec(tolerance=1e-60, precision=50)
        assert False, "tolerance below working precision should raise"
    except ParameterError as e:
        print(f"✅ Rejected: {e.violations[0]}")

    up = SPEC.escalated(20)
    assert up.precision == 50 and up.max_level == 8
    assert SPEC.with_tolerance(1e-6).tolerance == 1e-6

    try:
        PeriodIntegrand(5, 2, Fraction(1, 2), Fraction(1, 2))
        assert False
    except ParameterError:
        print("✅ Integrand on the excluded diagonal rejected")

    p = PeriodIntegrand(5, 2, Fraction(1, 2), Fraction(1, 4))
    assert p.swapped() == PeriodIntegrand(5, 3, Fraction(1, 4), Fraction(1, 2))
    assert p.shifted("l2", Fraction(1, 100)).lambda2 == Fraction(26, 100)


def test_tanh_sinh_beta():
    """Test the integral of x^(-2/5) (1-x)^(-3/5) against Gamma(3/5) Gamma(2/5)."""
    print("\n" + "=" * 60)
    print("Test 2: tanh-sinh Beta Integral")
    print("=" * 60)

    with mpmath.workdps(SPEC.precision):
        a, b = mpmath.mpf(2) / 5, mpmath.mpf(3) / 5
        result = nq_tanh_sinh(lambda x: x ** -a * (1 - x) ** -b, 0, 1, SPEC)
    reference = nq_beta_reference(Fraction(3, 5), Fraction(2, 5), SPEC.precision)
    assert abs(result.value - reference) < 1e-10
    with mpmath.workdps(SPEC.precision):
        assert abs(reference - mpmath.pi / mpmath.sin(mpmath.pi * 2 / 5)) < mpmath.mpf(10) ** -25
    print(f"✅ Beta(3/5, 2/5) = {mpmath.nstr(result.value, 15)}")


def test_hyp2f1_series():
    """Test the series against mpmath.hyp2f1 and the operator residual."""
    print("\n" + "=" * 60)
    print("Test 3: 2F1 Series")
    print("=" * 60)

    a, b, c = Fraction(2, 5), Fraction(3, 5), Fraction(6, 5)
    f0, f1, _ = nq_hyp2f1(a, b, c, Fraction(1, 2), SPEC)
    with mpmath.workdps(30):
        expected = mpmath.hyp2f1(mpmath.mpf(2) / 5, mpmath.mpf(3) / 5, mpmath.mpf(6) / 5, mpmath.mpf(1) / 2)
        derivative = mpmath.diff(
            lambda t: mpmath.hyp2f1(mpmath.mpf(2) / 5, mpmath.mpf(3) / 5, mpmath.mpf(6) / 5, t),
            mpmath.mpf(1) / 2,
        )
        assert abs(f0 - expected) < mpmath.mpf(10) ** -25
        assert abs(f1 - derivative) < mpmath.mpf(10) ** -15

    for var in ("l1", "l2"):
        residual = nq_pf_homogeneous_residual(5, 2, Fraction(1, 3), var, SPEC)
        assert residual < 1e-20
    wrong = nq_pf_homogeneous_residual(5, 2, Fraction(1, 3), "l1", SPEC, c_shift=Fraction(1, 2))
    assert wrong > 1e-6

    try:
        nq_hyp2f1(a, b, c, Fraction(1), SPEC)
        assert False
    except ValueError:
        print("✅ |lambda| >= 1 rejected")
    print("✅ Series matches mpmath; shifted c leaves a residual")


def test_onedim_quadrature():
    """Test the one-dimensional integrals against their closed forms."""
    print("\n" + "=" * 60)
    print("Test 4: One-Dimensional Quadrature")
    print("=" * 60)

    for mirror in (False, True):
        result = nq_onedim_check(5, 2, "1/2", "1/4", SPEC, mirror)
        assert result["residual"] < 1e-10, result
        print(f"✅ mirror={mirror}: {mpmath.nstr(result['value'], 15)}")


def test_inhomogeneous_residual():
    """Test D_l1 and D_l2 applied to the period against the closed forms at the configured settings."""
    print("\n" + "=" * 60)
    print("Test 5: Inhomogeneous Residuals")
    print("=" * 60)

    spec = QuadratureSpec.from_config(ToolkitConfig().numerics)
    assert spec.tolerance == 1e-8 and spec.precision == 50
    points = [
        PeriodIntegrand(5, 2, Fraction(1, 2), Fraction(1, 4)),
        PeriodIntegrand.from_params(random_admissible_point(7, 3, random.Random(1))),
    ]
    for p in points:
        result = nq_pf_inhomogeneous_residual(p, spec)
        assert result.passed(1e-8), result.to_dict()
        assert all(e <= spec.tolerance for e in result.errors)
        print(f"✅ {p.to_dict()}: residuals {result.to_dict()['residuals']}")


def test_iterated_period():
    """Test the period and its error estimate against nested mpmath quadrature."""
    print("\n" + "=" * 60)
    print("Test 6: Iterated Period")
    print("=" * 60)

    spec = QuadratureSpec.from_config(ToolkitConfig().numerics)
    p = PeriodIntegrand(5, 2, Fraction(1, 2), Fraction(1, 4))
    result = nq_period(p, spec)
    assert result.error <= spec.tolerance, result.to_dict()

    f1 = certificate_integrand(5, 2, "l1")
    f2 = certificate_integrand(5, 3, "l2")
    with mpmath.workdps(20):
        fx = _endpoint_guard(f1.compile_fibre(p.point()), 0, 1)
        fy = f2.compile_fibre(p.point())
        reference = mpmath.quad(
            lambda x: fx(x) * mpmath.quad(_endpoint_guard(fy, 0, x), [0, x], method="tanh-sinh"),
            [0, 1],
            method="tanh-sinh",
        )
    assert abs(result.value - reference) < 1e-9, (result.value, reference)
    print(f"✅ Period {mpmath.nstr(result.value, 15)} +- {mpmath.nstr(result.error, 3)}")


def test_normal_function_images():
    """Test the D-images of the sheet values against the exact xi1^(i) - xi0^(i) images."""
    print("\n" + "=" * 60)
    print("Test 7: Normal Function Images")
    print("=" * 60)

    spec = QuadratureSpec.from_config(ToolkitConfig().numerics)
    p = PeriodIntegrand(5, 2, Fraction(1, 2), Fraction(1, 4))
    result = nq_normal_function_value(p, spec)
    assert len(result["sheets"]) == 5
    assert result["period"] > 0
    for sheet in result["sheets"]:
        i = sheet["sheet"]
        exact = direct_image("xi1", i, 5, 2) - direct_image("xi0", i, 5, 2)
        expected = [part.eval_numeric(p.point(), 50) for part in (exact.first, exact.second)]
        for computed, target in zip(sheet["image"], expected):
            assert abs(computed - target) < 1e-8, (i, computed, target)

    wrong = direct_image("xi1", 1, 5, 2) - direct_image("xi0", 1, 5, 2)
    off = wrong.first.eval_numeric(p.point(), 50)
    assert abs(result["sheets"][0]["image"][0] - off) > 1e-3, "sheets must carry distinct factors"
    print(f"✅ Period {mpmath.nstr(result['period'], 12)}, multiplier {result['multiplier']}")


def test_fibre_evaluation():
    """Test per-point compilation, the reflected form and pole handling near and away from endpoints."""
    print("\n" + "=" * 60)
    print("Test 8: Fibre Evaluation")
    print("=" * 60)

    p = PeriodIntegrand(5, 2, Fraction(1, 2), Fraction(1, 4))
    f1 = certificate_integrand(5, 2, "l1")
    with mpmath.workdps(30):
        plain = f1.compile_fibre(p.point())
        reflected = f1.compile_fibre(p.point(), reflect=True)
        general = f1.compile()
        x = mpmath.mpf(1) / 3
        assert abs(plain(x) - general(mpmath.mpf(1) / 2, mpmath.mpf(1) / 4, x)) < 1e-25
        assert abs(reflected(1 - x) - plain(x)) < 1e-25

        guarded = _endpoint_guard(plain, 0, 1)
        assert guarded(mpmath.mpf(0)) == 0
        assert guarded(mpmath.mpf(1)) == 0
        print("✅ Branch points at the endpoints contribute zero")

        try:
            _endpoint_guard(plain, 0, 3)(mpmath.mpf(2))
            assert False, "a negative radicand inside the interval should raise"
        except PoleError as e:
            print(f"✅ Interior pole raised: {e}")


if __name__ == "__main__":
    print("=" * 60)
    print("Numerics Tests")
    print("=" * 60)

    try:
        test_quadrature_spec()
        test_tanh_sinh_beta()
        test_hyp2f1_series()
        test_onedim_quadrature()
        test_inhomogeneous_residual()
        test_iterated_period()
        test_normal_function_images()
        test_fibre_evaluation()

        print("\n" + "=" * 60)
        print("✅ All Numerics Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
