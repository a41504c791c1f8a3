"""
Test script for error handling and recovery system.

Tests:
- Retry logic
- Precision escalation of numeric routines
- Error classification
- Recovery strategies and error messages
- handle_error
"""

from src.backend.numerics import QuadratureSpec
from src.utils.error_handler import (
    ErrorHandler,
    ErrorType,
    FieldDivisionError,
    HypothesisError,
    ParameterError,
    PoleError,
    QuadratureError,
    SeriesConvergenceError,
    StructuralError,
    get_error_handler,
    handle_error,
)
from src.utils.retry import escalate_precision, retry


def test_retry_success():
    """Test retry logic with eventual success."""
    print("\n" + "=" * 60)
    print("Test 1: Retry Logic - Success After Retries")
    print("=" * 60)

    attempt_count = [0]

    @retry(max_retries=3, retryable_exceptions=(OSError,))
    def flaky_write():
        attempt_count[0] += 1
        if attempt_count[0] < 3:
            raise OSError("disk busy")
        return "written"

    assert flaky_write() == "written"
    assert attempt_count[0] == 3
    print(f"✅ Retry logic works: succeeded after {attempt_count[0]} attempts")


def test_retry_failure():
    """Test that parameter errors fail fast and transient errors stop after max_retries reruns."""
    print("\n" + "=" * 60)
    print("Test 2: Retry Logic - Permanent Failure")
    print("=" * 60)

    attempt_count = [0]

    @retry(max_retries=2)
    def always_fails():
        attempt_count[0] += 1
        raise ParameterError(["gcd(N, A) = gcd(6, 2) = 2 must be 1"])

    try:
        always_fails()
        assert False, "Should have raised exception"
    except ParameterError:
        assert attempt_count[0] == 1
        print(f"✅ Non-retryable exception failed fast: {attempt_count[0]} attempt(s)")

    writes = [0]

    @retry(max_retries=2, retryable_exceptions=(OSError,))
    def disk_full():
        writes[0] += 1
        raise OSError("no space left")

    try:
        disk_full()
        assert False, "Should have raised after the last rerun"
    except OSError:
        assert writes[0] == 3
        print("✅ Transient failure reraised after max_retries + 1 immediate attempts")


def test_escalate_precision():
    """Test that a non-converging routine is rerun at higher precision."""
    print("\n" + "=" * 60)
    print("Test 3: Precision Escalation")
    print("=" * 60)

    seen = []

    @escalate_precision()
    def needs_seventy_digits(value, spec):
        seen.append((spec.precision, spec.max_level))
        if spec.precision < 70:
            raise QuadratureError("did not reach tolerance", {"precision": spec.precision})
        return value

    spec = QuadratureSpec(precision=30, max_level=6, escalation_steps=2, escalation_digits=20)
    assert needs_seventy_digits(1, spec) == 1
    assert seen == [(30, 6), (50, 7), (70, 8)]

    calls = [0]

    @escalate_precision(steps=1)
    def never_converges(spec):
        calls[0] += 1
        raise SeriesConvergenceError("ran out of terms")

    try:
        never_converges(spec)
        assert False
    except SeriesConvergenceError:
        assert calls[0] == 2
        print("✅ Gives up after the configured escalations")
    print(f"✅ Escalated through {seen}")


def test_error_classification():
    """Test error classification."""
    print("\n" + "=" * 60)
    print("Test 4: Error Classification")
    print("=" * 60)

    handler = ErrorHandler()

    assert handler.classify_error(QuadratureError("no convergence")) == ErrorType.NUMERICAL
    assert handler.is_retryable(SeriesConvergenceError("budget")) is True
    print("✅ Non-convergence classified as NUMERICAL (retryable)")

    assert handler.classify_error(ParameterError(["bad A"])) == ErrorType.PARAMETER
    assert handler.classify_error(ValueError("bad value")) == ErrorType.PARAMETER
    assert handler.is_retryable(ParameterError(["bad A"])) is False
    print("✅ ParameterError classified as PARAMETER (not retryable)")

    for error in (StructuralError("x"), FieldDivisionError("x"), PoleError("x"), ZeroDivisionError("x")):
        assert handler.classify_error(error) == ErrorType.ALGEBRAIC
    print("✅ Algebraic failures classified as ALGEBRAIC")

    assert handler.classify_error(HypothesisError("N = 2")) == ErrorType.HYPOTHESIS
    assert handler.classify_error(MemoryError()) == ErrorType.RESOURCE
    assert handler.classify_error(RuntimeError("series did not converge")) == ErrorType.NUMERICAL
    assert handler.classify_error(RuntimeError("something odd")) == ErrorType.UNKNOWN
    print("✅ Keyword fallback works")


def test_recovery_strategies():
    """Test recovery strategy suggestions."""
    print("\n" + "=" * 60)
    print("Test 5: Recovery Strategies")
    print("=" * 60)

    handler = ErrorHandler()

    assert "--precision" in handler.get_recovery_strategy(QuadratureError("x"))
    assert "hyp2f1_max_terms" in handler.get_recovery_strategy(SeriesConvergenceError("x"))
    assert handler.get_recovery_strategy(HypothesisError("x")) == "Rank certificates require N != 2"
    assert "--jobs" in handler.get_recovery_strategy(MemoryError())
    print("✅ Recovery strategies match the error type")


def test_error_messages():
    """Test error message creation."""
    print("\n" + "=" * 60)
    print("Test 6: Error Messages")
    print("=" * 60)

    handler = ErrorHandler()
    message = handler.create_error_message(
        PoleError("denominator vanishes", "l1 - l2"),
        context={"check": "onedim_exact", "N": 5},
    )

    assert "Error: PoleError" in message
    assert "Message: denominator vanishes" in message
    assert "Type: algebraic" in message
    assert "Context: check=onedim_exact, N=5" in message
    assert "Recovery:" in message
    print(f"✅ {message}")


def test_handle_error_function():
    """Test handle_error function."""
    print("\n" + "=" * 60)
    print("Test 7: handle_error Function")
    print("=" * 60)

    error_info = handle_error(QuadratureError("tanh-sinh stalled"), context={"check": "pf_inhomogeneous"})

    assert error_info["error_type"] == ErrorType.NUMERICAL
    assert error_info["is_retryable"] is True
    assert "check=pf_inhomogeneous" in error_info["message"]
    assert isinstance(error_info["exception"], QuadratureError)
    assert get_error_handler() is get_error_handler()
    print("✅ handle_error returns the classification and message")


if __name__ == "__main__":
    print("=" * 60)
    print("Error Handling Tests")
    print("=" * 60)

    try:
        test_retry_success()
        test_retry_failure()
        test_escalate_precision()
        test_error_classification()
        test_recovery_strategies()
        test_error_messages()
        test_handle_error_function()

        print("\n" + "=" * 60)
        print("✅ All Error Handling Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
