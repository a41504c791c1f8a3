"""
Check Handler

Registers named verifications and runs them into report records. A check
never raises to the caller: failures are records with status "fail",
module errors become status "error" and hypothesis refusals become status
"refused".
"""

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import mpmath

from src.backend.numerics import QuadratureSpec
from src.backend.params import SurfaceParams, cli_validate
from src.backend.report import CheckRecord, to_jsonable
from src.config.config_schema import ToolkitConfig
from src.interfaces.check_handler import CheckHandlerInterface, VerifierInterface
from src.utils.error_handler import HypothesisError, handle_error
from src.utils.logger import get_logger, log_timing

KINDS = ("exact", "numeric")


@dataclass(frozen=True)
class CheckContext:
    """
    Everything a check needs. Parameters stay raw so that the validate
    check can report violations instead of failing to build the context.
    """

    N: int
    A: int
    lambda1: str
    lambda2: str
    config: ToolkitConfig = field(default_factory=ToolkitConfig)
    seed: int = 0
    finite_differences: bool = True

    @property
    def params(self) -> SurfaceParams:
        return cli_validate(self.N, self.A, self.lambda1, self.lambda2)

    def validate(self) -> SurfaceParams:
        """Raise ParameterError unless the parameters are admissible."""
        return self.params

    def spec(self, tolerance: Optional[float] = None) -> QuadratureSpec:
        return QuadratureSpec.from_config(self.config.numerics, tolerance)


@dataclass
class CheckOutcome:
    passed: bool
    value: Any = None
    target: Any = None
    residual: Any = None
    tolerance: Optional[float] = None


class RegisteredCheck(VerifierInterface):
    """A check function and the metadata copied into its records."""

    def __init__(
        self,
        name: str,
        func: Callable[[CheckContext], CheckOutcome],
        paper_ref: str,
        kind: str,
        description: str = "",
    ):
        self.name = name
        self.func = func
        self.paper_ref = paper_ref
        self.description = description
        self.kind = kind

    def info(self) -> Dict[str, str]:
        return {"name": self.name, "paper_ref": self.paper_ref, "description": self.description, "kind": self.kind}

    def run(self, context: CheckContext) -> CheckOutcome:
        return self.func(context)


class CheckHandler(CheckHandlerInterface):
    """
    Registry of verifications.

    Checks are module-level functions so the handler can be sent to worker
    processes.
    """

    def __init__(self):
        self.checks: Dict[str, RegisteredCheck] = {}
        self.logger = get_logger(__name__)

    def register(
        self,
        name: str,
        func: Callable[[CheckContext], CheckOutcome],
        paper_ref: str,
        kind: str = "exact",
        description: str = "",
    ) -> None:
        """
        Register a check.

        Args:
            name: Check name (must be unique)
            func: Callable taking a CheckContext and returning a CheckOutcome
            paper_ref: Locator of the result the check reproduces, e.g. "Thm. 7.2"
            kind: "exact" or "numeric"
            description: The statement in plain words
        """
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        if name in self.checks:
            self.logger.warning(f"Check '{name}' already registered, overwriting...")
        self.checks[name] = RegisteredCheck(name, func, paper_ref, kind, description)
        self.logger.debug(f"Registered check: {name}")

    def execute(self, name: str, context: CheckContext) -> CheckRecord:
        """
        Run one check.

        Args:
            name: Name of the check to run
            context: CheckContext

        Returns:
            CheckRecord; never raises
        """
        if name not in self.checks:
            self.logger.warning(f"Unknown check: {name}")
            return CheckRecord(name=name, status="error", value=f"Unknown check: {name}")

        check = self.checks[name]
        base = {
            "name": name,
            "paper_ref": check.paper_ref,
            "description": check.description,
            "kind": check.kind,
        }
        timer = log_timing(f"check {name}", self.logger)
        try:
            with timer:
                outcome = check.run(context)
        except HypothesisError as e:
            self.logger.warning(f"Check {name} refused: {e}")
            return CheckRecord(**base, status="refused", value=str(e), elapsed_ms=timer.elapsed_ms)
        except Exception as e:
            error_info = handle_error(
                e,
                context={"check": name, "N": context.N, "A": context.A},
                logger=self.logger,
            )
            return CheckRecord(
                **base,
                status="error",
                value={"error_type": error_info["error_type"].value, "message": error_info["message"]},
                elapsed_ms=timer.elapsed_ms,
            )

        status = "pass" if outcome.passed else "fail"
        self.logger.info(f"Check {name}: {status}")
        residual = outcome.residual
        if residual is not None and not isinstance(residual, str):
            residual = mpmath.nstr(residual, 5)
        return CheckRecord(
            **base,
            status=status,
            value=to_jsonable(outcome.value),
            target=to_jsonable(outcome.target),
            residual=residual,
            tolerance=outcome.tolerance,
            elapsed_ms=timer.elapsed_ms,
        )

    def run_many(self, names: List[str], context: CheckContext, jobs: int = 1) -> List[CheckRecord]:
        """
        Run several checks, in worker processes when jobs > 1.

        Records come back in the order of names.
        """
        if jobs <= 1 or len(names) <= 1:
            return [self.execute(name, context) for name in names]
        try:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(self.execute, name, context) for name in names]
                return [future.result() for future in futures]
        except (BrokenProcessPool, OSError) as e:
            handle_error(e, context={"jobs": jobs}, logger=self.logger)
            self.logger.warning("Worker pool unavailable, running checks sequentially")
            return [self.execute(name, context) for name in names]

    def list_checks(self) -> List[str]:
        """Get list of all registered check names."""
        return list(self.checks.keys())

    def describe(self) -> List[Dict[str, str]]:
        return [c.info() for c in self.checks.values()]

    def get_check_info(self, name: str) -> Optional[Dict[str, str]]:
        """Get information about a specific check."""
        if name not in self.checks:
            return None
        return self.checks[name].info()
