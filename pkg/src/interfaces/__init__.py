"""
Interfaces for the chowcheck toolkit

Abstract base classes for the check registry and the verifiers it runs.
"""

from src.interfaces.check_handler import CheckHandlerInterface, VerifierInterface

__all__ = [
    "CheckHandlerInterface",
    "VerifierInterface",
]
