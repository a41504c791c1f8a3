"""
Centralized logging for the chowcheck verification toolkit.

File handler with rotation plus a colored console handler. The console
handler writes to stderr because stdout carries the JSON report.
"""

import logging
import sys
import time
import functools
from pathlib import Path
from logging.handlers import RotatingFileHandler
from logging import FileHandler
from typing import Optional, Callable, Any


# Log directory
LOG_DIR = Path(__file__).parent.parent.parent / "logs"
LOG_DIR.mkdir(exist_ok=True)

# Log file path
LOG_FILE = LOG_DIR / "chowcheck.log"

FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
CONSOLE_FORMAT = '%(levelname)s - %(name)s - %(message)s'

_root_logger: Optional[logging.Logger] = None
_console_level: int = logging.WARNING


class ColoredFormatter(logging.Formatter):
    """Formatter with ANSI colors for console output."""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
        'RESET': '\033[0m'
    }

    def format(self, record):
        # Work on a copy so the file handler keeps the plain level name
        record = logging.makeLogRecord(record.__dict__)
        if record.levelname in self.COLORS:
            record.levelname = (
                f"{self.COLORS[record.levelname]}"
                f"{record.levelname}"
                f"{self.COLORS['RESET']}"
            )
        return super().format(record)


class SafeRotatingFileHandler(RotatingFileHandler):
    """RotatingFileHandler that keeps going when rotation hits a locked file."""

    def emit(self, record):
        try:
            super().emit(record)
        except (PermissionError, OSError):
            try:
                if self.stream:
                    self.stream.write(self.format(record) + self.terminator)
                    self.stream.flush()
            except Exception:
                pass


def _file_handler(log_file: Path) -> Optional[logging.Handler]:
    formatter = logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
    try:
        handler: logging.Handler = SafeRotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,
            backupCount=7,
            encoding='utf-8',
            delay=True
        )
    except Exception:
        try:
            handler = FileHandler(log_file, encoding='utf-8', mode='a', delay=True)
        except Exception:
            return None
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(formatter)
    return handler


def _setup_logger(name: str, level: int = logging.INFO) -> logging.Logger:
    """
    Set up the package logger with file and console handlers.

    Child loggers (``chowcheck.*`` and ``src.*``) propagate to it.

    Args:
        name: Logger name
        level: Logging level for the console

    Returns:
        Configured logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)

    if logger.handlers:
        return logger

    file_handler = _file_handler(LOG_FILE)
    if file_handler is not None:
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(ColoredFormatter(CONSOLE_FORMAT))
    logger.addHandler(console_handler)

    return logger


def set_console_level(level: str) -> None:
    """
    Change the console verbosity of every configured logger.

    Args:
        level: Level name such as "INFO" or "DEBUG"
    """
    global _console_level
    _console_level = getattr(logging, level.upper(), logging.INFO)
    for logger_name in ("chowcheck", "src"):
        for handler in logging.getLogger(logger_name).handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, FileHandler):
                handler.setLevel(_console_level)


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger for a module.

    Args:
        name: Logger name (typically __name__). If None, uses caller's module.

    Returns:
        Logger instance attached to the package handlers
    """
    if name is None:
        import inspect
        frame = inspect.currentframe().f_back
        name = frame.f_globals.get('__name__', 'chowcheck')

    if not (name == "chowcheck" or name.startswith("chowcheck.") or name.startswith("src")):
        name = f"chowcheck.{name}"
    return logging.getLogger(name)


def log_performance(operation_name: Optional[str] = None):
    """
    Decorator logging the wall time of a function call.

    Args:
        operation_name: Custom name for the operation. If None, uses function name.

    Example:
        @log_performance("Rank certificate")
        def rc_rank_full(N, A):
            ...
    """
    def decorator(func: Callable) -> Callable:
        op_name = operation_name or func.__name__
        logger = get_logger(func.__module__)

        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start_time = time.time()
            logger.debug(f"Starting {op_name}...")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = time.time() - start_time
                logger.error(f"{op_name} failed after {elapsed:.3f}s: {e}")
                raise
            elapsed = time.time() - start_time
            logger.info(f"{op_name} completed in {elapsed:.3f}s")
            return result

        return wrapper
    return decorator


def log_timing(operation_name: str, logger: Optional[logging.Logger] = None):
    """
    Context manager for timing operations.

    The elapsed time in milliseconds is available as ``elapsed_ms`` after
    the block exits.

    Example:
        with log_timing("verify-cocycles") as timer:
            run_checks()
        print(timer.elapsed_ms)
    """
    if logger is None:
        logger = get_logger()

    class TimingContext:
        def __init__(self, name: str, log: logging.Logger):
            self.name = name
            self.log = log
            self.start_time = None
            self.elapsed_ms = 0.0

        def __enter__(self):
            self.start_time = time.time()
            self.log.debug(f"Starting {self.name}...")
            return self

        def __exit__(self, exc_type, exc_val, exc_tb):
            elapsed = time.time() - self.start_time
            self.elapsed_ms = elapsed * 1000.0
            if exc_type is None:
                self.log.info(f"{self.name} completed in {elapsed:.3f}s")
            else:
                self.log.error(f"{self.name} failed after {elapsed:.3f}s: {exc_val}")
            return False

    return TimingContext(operation_name, logger)


_root_logger = _setup_logger("chowcheck", logging.WARNING)
_setup_logger("src", logging.WARNING)
