"""
Test script for interface implementations

Tests:
- CheckHandler implements CheckHandlerInterface
- Registered checks implement VerifierInterface
- Every command's checks are registered
- Abstract interfaces cannot be instantiated
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.interfaces import CheckHandlerInterface, VerifierInterface
from src.backend.check_handler import CheckHandler, RegisteredCheck
from src.backend.checks import CHECKS, COMMANDS
from src.utils.factories import create_check_handler


def test_check_handler_interface():
    """Test that CheckHandler implements CheckHandlerInterface."""
    print("=" * 60)
    print("Testing Check Handler Interface")
    print("=" * 60)

    assert issubclass(CheckHandler, CheckHandlerInterface), "CheckHandler should inherit from CheckHandlerInterface"
    print("   ✅ CheckHandler inherits from CheckHandlerInterface")

    handler = create_check_handler()
    assert isinstance(handler, CheckHandlerInterface)
    for method in ("register", "execute", "list_checks", "describe"):
        assert hasattr(handler, method), f"CheckHandler should have {method} method"
    print("   ✅ All interface methods present")


def test_verifier_interface():
    """Test that registered checks implement VerifierInterface."""
    print("\n" + "=" * 60)
    print("Testing Verifier Interface")
    print("=" * 60)

    handler = create_check_handler()
    for name in handler.list_checks():
        check = handler.checks[name]
        assert isinstance(check, RegisteredCheck)
        assert isinstance(check, VerifierInterface)
        assert check.paper_ref, f"{name} has no paper_ref"
        assert check.description, f"{name} has no description"
        assert check.kind in ("exact", "numeric")
    print(f"   ✅ {len(handler.list_checks())} checks implement VerifierInterface")


def test_commands_registered():
    """Test that every command only names registered checks."""
    print("\n" + "=" * 60)
    print("Testing Command Coverage")
    print("=" * 60)

    handler = create_check_handler()
    registered = set(handler.list_checks())
    assert registered == set(CHECKS)
    for command, names in COMMANDS.items():
        missing = [n for n in names if n not in registered]
        assert not missing, f"{command} names unregistered checks {missing}"
    assert {d["name"] for d in handler.describe()} == registered
    assert handler.get_check_info("no_such_check") is None
    info = handler.get_check_info("rank_delta")
    assert info["paper_ref"] == "Thm. 7.2" and info["kind"] == "exact"
    assert COMMANDS["rank-delta"].count("rank_delta_collapse") == 1
    print(f"   ✅ {len(COMMANDS)} commands map onto registered checks")


def test_abstract_interfaces():
    """Test that the interfaces are abstract."""
    print("\n" + "=" * 60)
    print("Testing Abstract Interfaces")
    print("=" * 60)

    for interface in (CheckHandlerInterface, VerifierInterface):
        try:
            interface()
            assert False, f"{interface.__name__} should not be instantiable"
        except TypeError:
            print(f"   ✅ {interface.__name__} is abstract")


if __name__ == "__main__":
    print("\n" + "=" * 60)
    print("Testing Interface Implementations")
    print("=" * 60)

    try:
        test_check_handler_interface()
        test_verifier_interface()
        test_commands_registered()
        test_abstract_interfaces()

        print("\n" + "=" * 60)
        print("✅ ALL INTERFACE TESTS PASSED!")
        print("=" * 60)

    except AssertionError as e:
        print(f"\n❌ TEST FAILED: {e}")
        sys.exit(1)
