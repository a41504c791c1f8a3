"""
Test script for logging system.

Tests:
- Logger naming under the package loggers
- File logging
- Console on stderr and its level
- Performance logging
- Timing context with elapsed_ms
"""

import logging
import sys
import time

from src.utils.logger import LOG_FILE, get_logger, log_performance, log_timing, set_console_level


def _console_handlers():
    return [
        h for h in logging.getLogger("chowcheck").handlers
        if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
    ]


def test_logger_names():
    """Test that loggers attach below chowcheck or src."""
    print("\n" + "=" * 60)
    print("Test 1: Logger Names")
    print("=" * 60)

    assert get_logger("module1").name == "chowcheck.module1"
    assert get_logger("chowcheck").name == "chowcheck"
    assert get_logger("src.backend.numerics").name == "src.backend.numerics"
    assert get_logger().name.startswith("chowcheck")
    print("✅ Module loggers propagate to the package loggers")


def test_file_logging():
    """Test that DEBUG messages reach logs/chowcheck.log."""
    print("\n" + "=" * 60)
    print("Test 2: File Logging")
    print("=" * 60)

    logger = get_logger("test_file_logger")
    marker = f"file logging marker {time.time()}"
    logger.debug(marker)
    for handler in logging.getLogger("chowcheck").handlers:
        handler.flush()

    assert LOG_FILE.name == "chowcheck.log"
    assert LOG_FILE.exists()
    lines = LOG_FILE.read_text(encoding="utf-8").splitlines()
    assert any(marker in line for line in lines[-50:])
    print(f"✅ Logs written to {LOG_FILE}")


def test_console_level():
    """Test that the console writes to stderr and follows set_console_level."""
    print("\n" + "=" * 60)
    print("Test 3: Console Handler")
    print("=" * 60)

    handlers = _console_handlers()
    assert handlers
    assert all(h.stream is not sys.stdout for h in handlers)

    set_console_level("DEBUG")
    assert all(h.level == logging.DEBUG for h in handlers)
    set_console_level("WARNING")
    assert all(h.level == logging.WARNING for h in handlers)
    print("✅ Console on stderr, level adjustable")


def test_performance_logging():
    """Test performance logging decorator."""
    print("\n" + "=" * 60)
    print("Test 4: Performance Logging")
    print("=" * 60)

    @log_performance("square")
    def square(x):
        return x * x

    @log_performance()
    def failing():
        raise RuntimeError("boom")

    assert square(7) == 49
    assert square.__name__ == "square"
    try:
        failing()
        assert False
    except RuntimeError:
        print("✅ Exceptions pass through the decorator")
    print("✅ Performance logging works")


def test_timing_context():
    """Test timing context manager."""
    print("\n" + "=" * 60)
    print("Test 5: Timing Context")
    print("=" * 60)

    with log_timing("short sleep") as timer:
        time.sleep(0.01)
    assert timer.elapsed_ms >= 5.0

    timer = log_timing("failing block")
    try:
        with timer:
            raise ValueError("inside")
    except ValueError:
        pass
    assert timer.elapsed_ms >= 0.0
    print(f"✅ elapsed_ms = {timer.elapsed_ms:.3f}")


if __name__ == "__main__":
    print("=" * 60)
    print("Logging System Tests")
    print("=" * 60)

    try:
        test_logger_names()
        test_file_logging()
        test_console_level()
        test_performance_logging()
        test_timing_context()

        print("\n" + "=" * 60)
        print("✅ All Logging Tests Passed!")
        print("=" * 60)

    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        exit(1)
