"""
High-Precision Numerics

Tanh-sinh quadrature (mpmath) of the period over the triangle
0 < y <= x < 1, the inhomogeneous Picard-Fuchs residuals computed by
differentiating the integrand exactly and integrating the result, the
homogeneous 2F1 annihilation check and the one-dimensional closed form.

Every routine runs inside ``mpmath.workdps(spec.precision)`` and compiles
its exact integrands in that context. Non-converged quadratures raise
QuadratureError and are rerun by ``escalate_precision`` at a finer spec.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import mpmath

from src.algebra.cyclo import CycloNum, embed_complex
from src.algebra.ratfunc import to_mpmath
from src.backend.params import SurfaceParams, pair_violations, t0_violations
from src.backend.pf_operator import (
    certificate_integrand,
    hypergeometric_parameters,
    onedim_closed_form,
    onedim_integrand,
    pf_make,
)
from src.utils.error_handler import ParameterError, PoleError, QuadratureError, SeriesConvergenceError
from src.utils.logger import get_logger, log_performance
from src.utils.retry import escalate_precision

logger = get_logger(__name__)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance (absolute), refinement budget and working precision."""

    tolerance: float = 1e-8
    max_level: int = 8
    precision: int = 50
    escalation_steps: int = 2
    escalation_digits: int = 20

    def __post_init__(self):
        if self.tolerance < 10.0 ** (3 - self.precision):
            raise ParameterError([
                f"tolerance {self.tolerance} is below 10^(3 - {self.precision}); "
                f"raise the working precision"
            ])

    def escalated(self, extra_digits: int, extra_levels: int = 1) -> "QuadratureSpec":
        return replace(
            self,
            precision=self.precision + extra_digits,
            max_level=self.max_level + extra_levels,
        )

    def with_tolerance(self, tolerance: float) -> "QuadratureSpec":
        return replace(self, tolerance=tolerance)

    @classmethod
    def from_config(cls, numerics, tolerance: Optional[float] = None) -> "QuadratureSpec":
        return cls(
            tolerance=numerics.tolerance if tolerance is None else tolerance,
            max_level=numerics.max_level,
            precision=numerics.precision,
            escalation_steps=numerics.escalation_steps,
            escalation_digits=numerics.escalation_digits,
        )


@dataclass(frozen=True)
class PeriodIntegrand:
    """(N, A, lambda1, lambda2) of the period integral, validated on construction."""

    N: int
    A: int
    lambda1: Fraction
    lambda2: Fraction

    def __post_init__(self):
        violations = pair_violations(self.N, self.A) + t0_violations(self.lambda1, self.lambda2)
        if violations:
            raise ParameterError(violations)

    @classmethod
    def from_params(cls, params: SurfaceParams) -> "PeriodIntegrand":
        return cls(params.N, params.A, params.lambda1, params.lambda2)

    def swapped(self) -> "PeriodIntegrand":
        return PeriodIntegrand(self.N, self.N - self.A, self.lambda2, self.lambda1)

    def shifted(self, var: str, h: Fraction) -> "PeriodIntegrand":
        if var == "l1":
            return replace(self, lambda1=self.lambda1 + h)
        return replace(self, lambda2=self.lambda2 + h)

    def point(self) -> Dict[str, Fraction]:
        return {"l1": self.lambda1, "l2": self.lambda2}

    def to_dict(self) -> Dict[str, object]:
        return {"N": self.N, "A": self.A, "lambda1": str(self.lambda1), "lambda2": str(self.lambda2)}


@dataclass
class QuadratureResult:
    value: mpmath.mpf
    error: mpmath.mpf
    precision: int
    max_level: int
    diagnostics: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "value": mpmath.nstr(self.value, 20),
            "error_estimate": mpmath.nstr(self.error, 5),
            "precision": self.precision,
            "max_level": self.max_level,
        }


def _quad(f: Callable, a, b, spec: QuadratureSpec) -> Tuple[mpmath.mpf, mpmath.mpf]:
    value, err = mpmath.quad(f, [a, b], method="tanh-sinh", error=True, maxdegree=spec.max_level)
    return value, err


Node = Tuple[str, mpmath.mpf]

_ORIGIN: Node = ("low", mpmath.mpf(0))


def _endpoint_guard(fn: Callable, a, b) -> Callable:
    """
    fn on [a, b] where only abscissae rounding onto an endpoint may land on
    a branch point. Those contribute zero; a PoleError anywhere else propagates.
    """
    def evaluate(x):
        try:
            return fn(x)
        except PoleError:
            slack = 8 * mpmath.mp.eps * max(1, abs(a), abs(b))
            if abs(x - a) <= slack or abs(x - b) <= slack:
                return mpmath.mpf(0)
            raise
    return evaluate


def _fibre(elem, p: PeriodIntegrand, reflect: bool = False) -> Callable:
    """Real values of elem at the lambdas of p as a function of x, or of 1 - x with reflect."""
    fn = elem.compile_fibre(p.point(), reflect)
    return lambda x: fn(x).real


def _diagnostics(name: str, value, err, spec: QuadratureSpec) -> Dict[str, object]:
    return {
        "routine": name,
        "value": mpmath.nstr(value, 15),
        "error_estimate": mpmath.nstr(err, 5),
        "tolerance": spec.tolerance,
        "precision": spec.precision,
        "max_level": spec.max_level,
    }


@escalate_precision()
def nq_tanh_sinh(f: Callable, a, b, spec: QuadratureSpec) -> QuadratureResult:
    """
    Integrate f over [a, b] by tanh-sinh.

    Endpoint algebraic singularities with exponents > -1 are handled by the
    double-exponential clustering of abscissae.

    Args:
        f: integrand, real or complex valued, evaluated in the current mpmath context
        a: lower limit
        b: upper limit
        spec: tolerance, refinement budget and precision

    Returns:
        QuadratureResult with the value and mpmath's error estimate

    Raises:
        QuadratureError: if the estimate exceeds the tolerance at max level
    """
    with mpmath.workdps(spec.precision):
        value, err = _quad(f, to_mpmath(a), to_mpmath(b), spec)
        if err > spec.tolerance:
            raise QuadratureError(
                f"tanh-sinh did not reach tolerance {spec.tolerance} (estimate {mpmath.nstr(err, 5)})",
                _diagnostics("nq_tanh_sinh", value, err, spec),
            )
        return QuadratureResult(+value, +err, spec.precision, spec.max_level)


def _tanh_sinh_nodes(level: int, floor) -> List[Tuple[str, mpmath.mpf, mpmath.mpf]]:
    """
    (side, c, weight) of the tanh-sinh rule on (0, 1) with step h = 2^-level,
    by increasing abscissa.

    The abscissae are (1 + tanh s)/2 with s = (pi/2) sinh(k h). A node stores
    its distance c to the nearer endpoint, 0 for side "low" and 1 for "high",
    so no abscissa rounds onto an endpoint. Nodes with c < floor are dropped.
    The weight is h pi cosh(k h) c (1 - c).
    """
    h = mpmath.ldexp(mpmath.mpf(1), -level)
    low: List[Tuple[str, mpmath.mpf, mpmath.mpf]] = []
    high: List[Tuple[str, mpmath.mpf, mpmath.mpf]] = []
    centre = None
    k = 0
    while True:
        t = k * h
        c = 1 / (1 + mpmath.exp(mpmath.pi * mpmath.sinh(t)))
        if c < floor:
            break
        weight = h * mpmath.pi * mpmath.cosh(t) * c * (1 - c)
        if k == 0:
            centre = ("low", c, weight)
        else:
            low.append(("low", c, weight))
            high.append(("high", c, weight))
        k += 1
    return low[::-1] + [centre] + high


def _inner_piece(inner: Tuple[Callable, Callable], left: Node, right: Node, spec: QuadratureSpec):
    """Integral of the inner factor between consecutive abscissae, and its estimate."""
    plain, reflected = inner
    if right[0] == "low":
        fn, a, b = plain, left[1], right[1]
    else:
        fn, a = reflected, right[1]
        b = left[1] if left[0] == "high" else 1 - left[1]
    width = b - a
    value, err = _quad(_endpoint_guard(lambda u: fn(a + width * u), 0, 1), 0, 1, spec)
    return value * width, err * width


@escalate_precision()
def nq_iterated(outer, inner, p: PeriodIntegrand, spec: QuadratureSpec) -> QuadratureResult:
    """
    Integral over 0 < y <= x < 1 of outer(x) * inner(y) at the lambdas of p.

    Both factors are XKummer elements, compiled once per call at the working
    precision. The outer integral runs tanh-sinh levels up to spec.max_level;
    the inner integral G(x) = int_0^x inner is accumulated piecewise between
    consecutive outer abscissae and reused across levels. Abscissae reach
    into the endpoints until c^(1 - e) drops below the working epsilon, where
    e = max(A, N-A)/N bounds the endpoint singularities.

    The estimate is the change from the previous level plus the inner
    estimates weighted by |w outer(x)|.

    Raises:
        QuadratureError: if the estimate exceeds the tolerance at max level
    """
    with mpmath.workdps(spec.precision):
        outer_fns = (_fibre(outer, p), _fibre(outer, p, reflect=True))
        inner_fns = (_fibre(inner, p), _fibre(inner, p, reflect=True))
        exponent = to_mpmath(Fraction(max(p.A, p.N - p.A), p.N))
        floor = mpmath.mp.eps ** (1 / (1 - exponent))
        cumulative: Dict[Node, Tuple[mpmath.mpf, mpmath.mpf]] = {_ORIGIN: (mpmath.mpf(0), mpmath.mpf(0))}
        outer_values: Dict[Node, mpmath.mpf] = {}
        previous = None
        value = estimate = mpmath.mpf(0)
        for level in range(max(1, min(3, spec.max_level - 1)), spec.max_level + 1):
            value = budget = mpmath.mpf(0)
            left = _ORIGIN
            for side, c, weight in _tanh_sinh_nodes(level, floor):
                node = (side, c)
                if node not in cumulative:
                    piece, err = _inner_piece(inner_fns, left, node, spec)
                    g, g_err = cumulative[left]
                    cumulative[node] = (g + piece, g_err + err)
                if node not in outer_values:
                    outer_values[node] = outer_fns[0](c) if side == "low" else outer_fns[1](c)
                g, g_err = cumulative[node]
                term = weight * outer_values[node]
                value += term * g
                budget += abs(term) * g_err
                left = node
            if previous is not None:
                estimate = abs(value - previous) + budget
                logger.debug(f"iterated level {level}: {mpmath.nstr(value, 15)} +- {mpmath.nstr(estimate, 3)}")
                if estimate <= spec.tolerance:
                    return QuadratureResult(+value, +estimate, spec.precision, level, {"nodes": len(outer_values)})
            previous = value
        raise QuadratureError(
            f"iterated quadrature did not reach tolerance {spec.tolerance} "
            f"(estimate {mpmath.nstr(estimate, 5)})",
            _diagnostics("nq_iterated", value, estimate, spec),
        )


def _fibre_factors(p: PeriodIntegrand):
    """x- and y-parts of the integrand as XKummer elements in the variable x."""
    f1 = certificate_integrand(p.N, p.A, "l1")
    f2 = certificate_integrand(p.N, p.N - p.A, "l2")
    return f1, f2


@log_performance("nq_period")
def nq_period(p: PeriodIntegrand, spec: QuadratureSpec) -> QuadratureResult:
    """
    The period over the i = 0 sheet:

        integral over 0 < y <= x < 1 of
        x^-a (1-x)^-a (1-l1 x)^-a * y^-b (1-y)^-b (1-l2 y)^-b dy dx

    with a = A/N, b = (N-A)/N and principal real roots.
    """
    f1, f2 = _fibre_factors(p)
    with mpmath.workdps(spec.precision):
        result = nq_iterated(f1, f2, p, spec)
    result.diagnostics["point"] = p.to_dict()
    logger.debug(f"period at {p.to_dict()}: {mpmath.nstr(result.value, 15)} +- {mpmath.nstr(result.error, 3)}")
    return result


def inhomogeneous_targets(p: PeriodIntegrand, precision: int) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """
    Closed forms of the two components:
        ((1-l2)^a (1-l1)^-a - 1)/(l1 - l2)
        ((1-l1)^b (1-l2)^-b - 1)/(l1 - l2)
    """
    point = p.point()
    first = onedim_closed_form(p.N, p.A).eval_numeric(point, precision)
    second = -onedim_closed_form(p.N, p.A, mirror=True).eval_numeric(point, precision)
    return first.real, second.real


@dataclass
class InhomogeneousResult:
    point: Dict[str, object]
    computed: Tuple[mpmath.mpf, mpmath.mpf]
    targets: Tuple[mpmath.mpf, mpmath.mpf]
    errors: Tuple[mpmath.mpf, mpmath.mpf]

    @property
    def residuals(self) -> Tuple[mpmath.mpf, mpmath.mpf]:
        return tuple(abs(c - t) for c, t in zip(self.computed, self.targets))

    def passed(self, tolerance: float) -> bool:
        return all(r <= tolerance for r in self.residuals)

    def to_dict(self) -> Dict[str, object]:
        return {
            "point": self.point,
            "computed": [mpmath.nstr(v, 20) for v in self.computed],
            "targets": [mpmath.nstr(v, 20) for v in self.targets],
            "residuals": [mpmath.nstr(v, 5) for v in self.residuals],
            "error_estimates": [mpmath.nstr(v, 5) for v in self.errors],
        }


@log_performance("nq_pf_inhomogeneous_residual")
def nq_pf_inhomogeneous_residual(p: PeriodIntegrand, spec: QuadratureSpec) -> InhomogeneousResult:
    """
    Apply D_l1 and D_l2 to the integrand exactly and integrate.

    D_l1 only touches the x-factor and D_l2 only the y-factor, so each
    component is the iterated integral of a separable product.

    Args:
        p: integrand parameters
        spec: quadrature settings

    Returns:
        InhomogeneousResult with computed values, closed-form targets and residuals
    """
    f1, f2 = _fibre_factors(p)
    d1f1 = pf_make("l1", p.N, p.A).apply(f1)
    d2f2 = pf_make("l2", p.N, p.A).apply(f2)
    with mpmath.workdps(spec.precision):
        first = nq_iterated(d1f1, f2, p, spec)
        second = nq_iterated(f1, d2f2, p, spec)
        targets = inhomogeneous_targets(p, spec.precision)
    result = InhomogeneousResult(
        p.to_dict(),
        (first.value, second.value),
        targets,
        (first.error, second.error),
    )
    logger.info(f"inhomogeneous residuals at {p.to_dict()}: {[mpmath.nstr(r, 3) for r in result.residuals]}")
    return result


# Hypergeometric series


def _series(a, b, c, lam, tail: mpmath.mpf, max_terms: int) -> mpmath.mpf:
    """
    Sum of 2F1(a, b; c; lam) until the geometric tail bound drops below tail.

    For n past every sign change, consecutive term ratios are bounded by
    q = |lam| * max(1, (a+n)/(n+1)) * max(1, (b+n)/(c+n)), so the tail after
    term n is at most |t_n| q / (1 - q).
    """
    term = mpmath.mpf(1)
    total = mpmath.mpf(1)
    alam = abs(lam)
    for n in range(max_terms):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * lam
        total += term
        m = n + 1
        if a + m > 0 and b + m > 0 and c + m > 0:
            q = alam * max(1, (a + m) / (m + 1)) * max(1, (b + m) / (c + m))
            if q < 1 and abs(term) * q / (1 - q) < tail:
                return total
    raise SeriesConvergenceError(
        f"2F1({mpmath.nstr(a, 5)}, {mpmath.nstr(b, 5)}; {mpmath.nstr(c, 5)}; {mpmath.nstr(lam, 5)}) "
        f"did not converge within {max_terms} terms"
    )


def nq_hyp2f1(a, b, c, lam, spec: QuadratureSpec, max_terms: int = 20000) -> Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    """
    2F1(a, b; c; lam) and its first two lam-derivatives by power series.

    Derivatives use d/dlam 2F1(a, b; c) = (ab/c) 2F1(a+1, b+1; c+1).

    Raises:
        ValueError: if |lam| >= 1 or c is a non-positive integer
        SeriesConvergenceError: if the term budget is exhausted
    """
    with mpmath.workdps(spec.precision):
        a, b, c, lam = (to_mpmath(v) for v in (a, b, c, lam))
        if abs(lam) >= 1:
            raise ValueError(f"series requires |lam| < 1, got {lam}")
        if c <= 0 and mpmath.isint(c):
            raise ValueError(f"c = {c} is a non-positive integer")
        tail = mpmath.mpf(10) ** (-spec.precision - 5)
        f0 = _series(a, b, c, lam, tail, max_terms)
        f1 = a * b / c * _series(a + 1, b + 1, c + 1, lam, tail, max_terms)
        f2 = a * (a + 1) * b * (b + 1) / (c * (c + 1)) * _series(a + 2, b + 2, c + 2, lam, tail, max_terms)
        return +f0, +f1, +f2


def nq_pf_homogeneous_residual(
    N: int,
    A: int,
    lam,
    var: str,
    spec: QuadratureSpec,
    c_shift: Fraction = Fraction(0),
    max_terms: int = 20000,
) -> mpmath.mpf:
    """
    |D_var 2F1(A/N, 1 - A/N; c_var; lam)| from the series and its derivatives.

    A nonzero c_shift evaluates the series at the wrong c (negative control).
    """
    a, b, c = hypergeometric_parameters(var, N, A)
    f0, f1, f2 = nq_hyp2f1(a, b, c + c_shift, lam, spec, max_terms)
    with mpmath.workdps(spec.precision):
        t = to_mpmath(lam)
        ma = to_mpmath(a)
        first = (1 - ma) if var == "l1" else ma
        residual = abs(t * (1 - t) * f2 + 2 * (first - t) * f1 - ma * (1 - ma) * f0)
    logger.debug(f"homogeneous residual N={N} A={A} {var}={lam}: {mpmath.nstr(residual, 5)}")
    return +residual


def nq_onedim_check(N: int, A: int, lambda1, lambda2, spec: QuadratureSpec, mirror: bool = False) -> Dict[str, object]:
    """
    Quadrature of the one-dimensional integrand against its closed form.

    Args:
        N, A: cover parameters
        lambda1, lambda2: point in (0, 1), distinct
        spec: quadrature settings
        mirror: use the exchanged integrand (A <-> N - A, l1 <-> l2)

    Returns:
        dict with value, target, residual and error estimate
    """
    p = PeriodIntegrand(N, A, Fraction(str(lambda1)), Fraction(str(lambda2)))
    integrand = onedim_integrand(N, A, mirror)
    point = p.point()
    with mpmath.workdps(spec.precision):
        fn = _endpoint_guard(_fibre(integrand, p), 0, 1)
        result = nq_tanh_sinh(fn, 0, 1, spec)
        target = onedim_closed_form(N, A, mirror).eval_numeric(point, spec.precision).real
        residual = abs(result.value - target)
    return {
        "point": p.to_dict(),
        "mirror": mirror,
        "value": result.value,
        "target": target,
        "residual": residual,
        "error_estimate": result.error,
    }


def nq_normal_function_value(p: PeriodIntegrand, spec: QuadratureSpec) -> Dict[str, object]:
    """
    L = (1 - zeta_N^A) * period on the i = 0 sheet, the sheet values
    L_i = zeta_N^(A i) L, and (D_l1, D_l2) L_i from the quadratures of the
    exactly differentiated integrand.
    """
    period = nq_period(p, spec)
    derivatives = nq_pf_inhomogeneous_residual(p, spec)
    order = 2 * p.N
    factor = CycloNum.one(order) - CycloNum.zeta(order, 2 * p.A)
    with mpmath.workdps(spec.precision):
        multiplier = embed_complex(factor, spec.precision)
        value = multiplier * period.value
        image = [multiplier * c for c in derivatives.computed]
        sheets = []
        for i in range(p.N):
            z = embed_complex(CycloNum.zeta(order, (2 * p.A * i) % order), spec.precision)
            sheets.append({"sheet": i, "value": z * value, "image": [z * v for v in image]})
    return {
        "point": p.to_dict(),
        "period": period.value,
        "error_estimate": max([period.error, *derivatives.errors]),
        "normal_function": value,
        "multiplier": str(factor),
        "sheets": sheets,
    }


def nq_finite_difference_consistency(
    p: PeriodIntegrand,
    spec: QuadratureSpec,
    step: float = 1e-3,
    tolerance: float = 1e-5,
) -> Dict[str, object]:
    """
    Central finite differences of the period, fed through D_l1 and D_l2,
    against the closed-form components.

    The finite-difference truncation error is O(step^2), so the period must
    be computed well below step^2 * tolerance.
    """
    h = Fraction(str(step))
    records = {}
    passed = True
    targets = inhomogeneous_targets(p, spec.precision)
    centre = nq_period(p, spec).value
    for index, var in enumerate(("l1", "l2")):
        lam = p.lambda1 if var == "l1" else p.lambda2
        plus = nq_period(p.shifted(var, h), spec).value
        minus = nq_period(p.shifted(var, -h), spec).value
        with mpmath.workdps(spec.precision):
            hm = to_mpmath(h)
            d1 = (plus - minus) / (2 * hm)
            d2 = (plus - 2 * centre + minus) / (hm * hm)
            t = to_mpmath(lam)
            a = mpmath.mpf(p.A) / p.N
            first = (1 - a) if var == "l1" else a
            applied = t * (1 - t) * d2 + 2 * (first - t) * d1 - a * (1 - a) * centre
            deviation = abs(applied - targets[index])
        ok = deviation <= tolerance
        passed = passed and ok
        records[var] = {
            "finite_difference": mpmath.nstr(applied, 12),
            "target": mpmath.nstr(targets[index], 12),
            "deviation": mpmath.nstr(deviation, 5),
            "passed": ok,
        }
    logger.info(f"finite-difference consistency at {p.to_dict()}: passed={passed}")
    return {"point": p.to_dict(), "step": step, "tolerance": tolerance, "components": records, "passed": passed}


def nq_beta_reference(p, q, precision: int = 50) -> mpmath.mpf:
    """Gamma(p) Gamma(q) / Gamma(p + q)."""
    with mpmath.workdps(precision):
        p, q = to_mpmath(p), to_mpmath(q)
        return +(mpmath.gamma(p) * mpmath.gamma(q) / mpmath.gamma(p + q))
