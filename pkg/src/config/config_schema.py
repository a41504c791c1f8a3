"""
Configuration schema using Pydantic for type validation.

Defines all configuration models for the chowcheck toolkit.
"""

from pydantic import BaseModel, ConfigDict, Field


class NumericsConfig(BaseModel):
    """Quadrature and special-function settings."""

    precision: int = Field(
        default=50,
        ge=15,
        description="Working precision in decimal digits"
    )
    tolerance: float = Field(
        default=1e-8,
        gt=0,
        description="Absolute tolerance for the inhomogeneous Picard-Fuchs residuals"
    )
    onedim_tolerance: float = Field(
        default=1e-10,
        gt=0,
        description="Absolute tolerance for the one-dimensional closed-form check"
    )
    homogeneous_tolerance: float = Field(
        default=1e-10,
        gt=0,
        description="Absolute tolerance for the hypergeometric annihilation check"
    )
    max_level: int = Field(
        default=8,
        ge=2,
        description="Maximum tanh-sinh refinement degree"
    )
    escalation_steps: int = Field(
        default=2,
        ge=0,
        description="How many times a non-converged quadrature is rerun at higher precision"
    )
    escalation_digits: int = Field(
        default=20,
        ge=1,
        description="Digits added per precision escalation"
    )
    finite_difference_step: float = Field(
        default=1e-3,
        gt=0,
        description="Step of the central finite differences of the period"
    )
    finite_difference_tolerance: float = Field(
        default=1e-5,
        gt=0,
        description="Agreement required between finite differences and the symbolic route"
    )
    finite_difference_check: bool = Field(
        default=True,
        description="Run the finite-difference consistency sweep in verify-pf-numeric"
    )
    hyp2f1_max_terms: int = Field(
        default=20000,
        ge=10,
        description="Term budget of the 2F1 power series"
    )
    random_points: int = Field(
        default=10,
        ge=0,
        description="Random admissible points checked by verify-pf-numeric besides the base point"
    )


class VerificationConfig(BaseModel):
    """Exact verification sweeps."""

    random_pairs: int = Field(
        default=200,
        ge=0,
        description="Random pairs of group elements for the cocycle identity"
    )
    seed: int = Field(
        default=0,
        description="Seed of every random choice; equal seeds give equal reports"
    )
    jobs: int = Field(
        default=1,
        ge=1,
        description="Worker processes for independent checks"
    )
    max_N: int = Field(
        default=12,
        ge=3,
        description="Largest N used by the all-parameters sweeps"
    )


class RankConfig(BaseModel):
    """Rank certificate settings."""

    fast_path: bool = Field(
        default=False,
        description="Run the finite-field specialization pre-pass before exact elimination"
    )
    fast_path_points: int = Field(
        default=8,
        ge=1,
        description="Points on the Fermat curves used per specialization"
    )
    fast_path_prime_floor: int = Field(
        default=10007,
        ge=3,
        description="Search for p = 1 mod 2N starts above this value"
    )


class DefaultsConfig(BaseModel):
    """Default surface parameters when flags are omitted."""

    N: int = Field(default=5, description="Cover degree")
    A: int = Field(default=2, description="Branch exponent")
    lambda1: str = Field(default="1/2", description="First parameter, exact rational or decimal")
    lambda2: str = Field(default="1/4", description="Second parameter, exact rational or decimal")


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = Field(
        default="WARNING",
        description="Console log level (file log always records DEBUG)"
    )


class ToolkitConfig(BaseModel):
    """Root configuration model."""

    model_config = ConfigDict(extra="forbid")

    numerics: NumericsConfig = Field(
        default_factory=NumericsConfig,
        description="Quadrature and special-function settings"
    )
    verification: VerificationConfig = Field(
        default_factory=VerificationConfig,
        description="Exact verification sweeps"
    )
    rank: RankConfig = Field(
        default_factory=RankConfig,
        description="Rank certificate settings"
    )
    defaults: DefaultsConfig = Field(
        default_factory=DefaultsConfig,
        description="Default surface parameters"
    )
    logging: LoggingConfig = Field(
        default_factory=LoggingConfig,
        description="Logging configuration"
    )
