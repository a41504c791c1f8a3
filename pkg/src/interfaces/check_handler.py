"""
Check Handler Interface

Abstract base classes for the check registry and for individual verifiers.
"""

from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List


class VerifierInterface(ABC):
    """
    A single named verification.

    Implementations carry a locator of the result they reproduce, a plain
    description and whether the check is exact or numeric.
    """

    name: str
    paper_ref: str
    description: str
    kind: str

    @abstractmethod
    def run(self, context: Any) -> Any:
        """
        Run the verification.

        Args:
            context: CheckContext with parameters and configuration

        Returns:
            CheckOutcome
        """
        pass


class CheckHandlerInterface(ABC):
    """
    Interface for check registries.

    All check handlers must implement these methods.
    """

    @abstractmethod
    def register(
        self,
        name: str,
        func: Callable,
        paper_ref: str,
        kind: str,
        description: str,
    ) -> None:
        """
        Register a check.

        Args:
            name: Check name (must be unique)
            func: Callable taking a CheckContext and returning a CheckOutcome
            paper_ref: Locator of the result the check reproduces
            kind: "exact" or "numeric"
            description: The statement in plain words
        """
        pass

    @abstractmethod
    def execute(self, name: str, context: Any) -> Any:
        """
        Run a registered check.

        Never raises: failures and errors become records.

        Args:
            name: Name of the check to run
            context: CheckContext

        Returns:
            CheckRecord
        """
        pass

    @abstractmethod
    def list_checks(self) -> List[str]:
        """
        Get list of all registered check names.

        Returns:
            List of check names
        """
        pass

    @abstractmethod
    def describe(self) -> List[Dict[str, str]]:
        """
        Name, locator, description and kind of every registered check.

        Returns:
            List of descriptions
        """
        pass
