"""
Test script for the command-line surface and reports.

Tests:
- validate: exit codes and violations in the report
- --list-A
- Report determinism without timing
- Refused rank certificates for N = 2
- Check handler statuses (pass, fail, error, refused)
- Writing the report with --json
"""

import io
import json
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

from chowcheck import main
from src.backend.check_handler import CheckOutcome
from src.backend.checks import COMMANDS, checks_for
from src.utils.error_handler import HypothesisError
from src.utils.factories import create_check_context, create_check_handler


def run_cli(argv):
    """Run main() and return (exit code, parsed stdout)."""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(argv)
    return code, json.loads(buffer.getvalue())


def test_validate_command():
    """Test exit 0 for admissible parameters and 1 with violations otherwise."""
    print("\n" + "=" * 60)
    print("Test 1: validate")
    print("=" * 60)

    code, report = run_cli(["validate", "--N", "5", "--A", "2", "--lambda1", "1/2", "--lambda2", "1/4"])
    assert code == 0
    assert report["command"] == "validate"
    assert report["params"] == {"N": 5, "A": 2, "lambda1": "1/2", "lambda2": "1/4"}
    record = report["checks"][0]
    assert record["status"] == "pass"
    assert record["value"]["admissible_A"] == [2, 3]

    code, report = run_cli(["validate", "--N", "10", "--A", "7"])
    assert code == 1
    violations = report["checks"][0]["value"]["violations"]
    assert any("(2N-1)/3" in v for v in violations)
    assert report["checks"][0]["value"]["admissible_A"] == []
    print(f"✅ (10, 7) rejected: {violations}")


def test_list_A():
    """Test the admissible A listing."""
    print("\n" + "=" * 60)
    print("Test 2: --list-A")
    print("=" * 60)

    code, listing = run_cli(["validate", "--N", "7", "--list-A"])
    assert code == 0
    assert listing == {"N": 7, "admissible_A": [3, 4]}
    print(f"✅ {listing}")


def test_invalid_parameters_skip_checks():
    """Test that a command on invalid parameters only reports the validation."""
    print("\n" + "=" * 60)
    print("Test 3: Invalid Parameters Short-Circuit")
    print("=" * 60)

    code, report = run_cli(["verify-cocycles", "--N", "6", "--A", "2", "--no-timing"])
    assert code == 1
    assert [c["name"] for c in report["checks"]] == ["validate"]
    assert report["checks"][0]["status"] == "fail"
    print("✅ Only the validation record is reported")


def test_report_determinism():
    """Test that reports without timing are byte-identical across runs."""
    print("\n" + "=" * 60)
    print("Test 4: Report Determinism")
    print("=" * 60)

    argv = ["verify-chi-power", "--N", "5", "--A", "2", "--seed", "3", "--no-timing"]
    outputs = []
    for _ in range(2):
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = main(argv)
        assert code == 0
        outputs.append(buffer.getvalue())
    assert outputs[0] == outputs[1]
    assert "elapsed_ms" not in outputs[0]
    assert json.loads(outputs[0])["seed"] == 3
    print("✅ Identical reports for identical inputs")


def test_rank_refused_for_N2():
    """Test that rank-full at N = 2 is refused rather than failed."""
    print("\n" + "=" * 60)
    print("Test 5: Refused Rank Certificate")
    print("=" * 60)

    code, report = run_cli(["rank-full", "--N", "2", "--A", "1", "--lambda1", "1/3", "--lambda2", "1/5"])
    assert code == 1
    statuses = {c["name"]: c["status"] for c in report["checks"]}
    assert statuses == {"rank_full": "refused"}
    print(f"✅ {statuses}")


def test_handler_statuses():
    """Test that execute never raises and maps outcomes to statuses."""
    print("\n" + "=" * 60)
    print("Test 6: Handler Statuses")
    print("=" * 60)

    handler = create_check_handler()

    def broken(ctx):
        raise ZeroDivisionError("division by zero in a test check")

    def refused(ctx):
        raise HypothesisError("not applicable")

    handler.register("always_fails", lambda ctx: CheckOutcome(False, 1, 2), "Eq. (0.0)")
    handler.register("broken", broken, "Thm. 0.1")
    handler.register("refused", refused, "Thm. 0.2", description="refuses")

    ctx = create_check_context(N=5, A=2)
    assert handler.execute("always_fails", ctx).status == "fail"
    error = handler.execute("broken", ctx)
    assert error.status == "error"
    assert error.value["error_type"] == "algebraic"
    refusal = handler.execute("refused", ctx)
    assert refusal.status == "refused"
    assert refusal.paper_ref == "Thm. 0.2" and refusal.description == "refuses"
    assert handler.execute("no_such_check", ctx).status == "error"
    assert handler.execute("validate", ctx).passed

    assert "finite_differences" not in checks_for("verify-pf-numeric", finite_differences=False)
    assert set(COMMANDS["report-all"]) >= set(COMMANDS["rank-delta"])
    print("✅ pass, fail, error and refused are reported, never raised")


def test_json_output():
    """Test that --json writes the same report that goes to stdout, with paper_ref on each record."""
    print("\n" + "=" * 60)
    print("Test 7: --json Output")
    print("=" * 60)

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "out" / "report.json"
        code, report = run_cli(["validate", "--N", "5", "--A", "3", "--json", str(path), "--no-timing"])
        assert code == 0
        assert json.loads(path.read_text(encoding="utf-8")) == report
    record = report["checks"][0]
    assert record["paper_ref"] == "Eqs. (3.3)-(3.4)"
    assert record["description"].startswith("gcd(N, A) = 1")
    assert "statement" not in record
    print("✅ Report written to --json")


if __name__ == "__main__":
    print("=" * 60)
    print("CLI Tests")
    print("=" * 60)

    try:
        test_validate_command()
        test_list_A()
        test_invalid_parameters_skip_checks()
        test_report_determinism()
        test_rank_refused_for_N2()
        test_handler_statuses()
        test_json_output()

        print("\n" + "=" * 60)
        print("✅ All CLI Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
