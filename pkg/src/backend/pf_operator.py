"""
Picard-Fuchs Operators

Second-order operators a*d^2 + b*d + c in l1 or l2 acting on the root
algebras, their gauge conjugation by chi and pull-back by the group action,
and the exact certificate identities behind the inhomogeneous system:

    - D_l1 applied to x^(-a)(1-x)^(-a)(1-l1 x)^(-a) is the x-derivative of
      H = -a x(1-x)/(1-l1 x) * (same integrand), a = A/N; the l2 operator
      satisfies the mirrored identity with a replaced by (N-A)/N.
    - The one-dimensional reduction: the integrand
      a (1-l2 x)^(a-1) (1-l1 x)^(-1-a) is the x-derivative of
      ((1-l2 x)/(1-l1 x))^a / (l1 - l2).

The hypergeometric parameters of the homogeneous solutions are
(a, 1-a; 2-2a) for l1 and (a, 1-a; 2a) for l2.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from src.algebra.kummer import KummerElem, RadicalElem, XKummerElem
from src.algebra.ratfunc import RatFunc
from src.backend.group_action import (
    TildeG2Elem,
    ga_cocycle_value,
    ga_substitute,
)
from src.backend.params import validate_pair
from src.utils.error_handler import PoleError, StructuralError
from src.utils.logger import get_logger

logger = get_logger(__name__)

Coefficient = Union[RatFunc, KummerElem]

PF_VARIABLES = ("l1", "l2")


@dataclass(frozen=True)
class PFOperator:
    """
    a * d^2/dvar^2 + b * d/dvar + c.

    Coefficients are rational functions for the operators built here and
    for their conjugates; general Kummer coefficients are accepted and act
    by multiplication on KummerElem arguments.
    """

    var: str
    a: Coefficient
    b: Coefficient
    c: Coefficient
    N: int
    A: int

    def __post_init__(self):
        if self.var not in PF_VARIABLES:
            raise StructuralError(f"operator variable must be one of {PF_VARIABLES}, got {self.var!r}")
        if _is_zero(self.a):
            raise StructuralError("leading coefficient of a second-order operator must be nonzero")

    def apply(self, e: RadicalElem) -> RadicalElem:
        """a e'' + b e' + c e, exactly."""
        d1 = e.derive(self.var)
        d2 = d1.derive(self.var)
        return _times(self.a, d2) + _times(self.b, d1) + _times(self.c, e)

    def coefficients(self) -> Tuple[Coefficient, Coefficient, Coefficient]:
        return self.a, self.b, self.c

    def __eq__(self, other):
        if not isinstance(other, PFOperator):
            return NotImplemented
        return self.var == other.var and all(
            _as_kummer(x, self.N, self.A) == _as_kummer(y, other.N, other.A)
            for x, y in zip(self.coefficients(), other.coefficients())
        )

    def __hash__(self):
        return hash((self.var, self.N, self.A))

    def __str__(self):
        return f"({self.a}) d^2 + ({self.b}) d + ({self.c})  [d = d/d{self.var}]"


def _is_zero(coeff: Coefficient) -> bool:
    return coeff.is_zero()


def _times(coeff: Coefficient, e: RadicalElem) -> RadicalElem:
    if isinstance(coeff, RatFunc):
        return e.scale(coeff)
    if isinstance(e, KummerElem):
        return coeff * e
    if coeff.is_scalar():
        return e.scale(coeff.scalar_value())
    raise StructuralError(f"cannot apply a Kummer coefficient to {type(e).__name__}")


def _as_kummer(coeff: Coefficient, N: int, A: int) -> KummerElem:
    return KummerElem.scalar(coeff, N, A) if isinstance(coeff, RatFunc) else coeff


def _as_ratfunc(e: KummerElem) -> Coefficient:
    return e.scalar_value() if e.is_scalar() else e


def pf_make(var: str, N: int, A: int) -> PFOperator:
    """
    The Picard-Fuchs operator in l1 or l2.

    D_l1 = l1(1-l1) d^2 + 2(1 - A/N - l1) d - (A/N)(1 - A/N)
    D_l2 = l2(1-l2) d^2 + 2(A/N - l2) d - (A/N)(1 - A/N)

    Args:
        var: "l1" or "l2"
        N: cover degree
        A: branch exponent

    Returns:
        PFOperator with rational coefficients

    Raises:
        ParameterError: if (N, A) is not admissible
    """
    validate_pair(N, A)
    if var not in PF_VARIABLES:
        raise StructuralError(f"operator variable must be one of {PF_VARIABLES}, got {var!r}")
    order = 2 * N
    a = Fraction(A, N)
    lam = RatFunc.var(var, order)
    first = (1 - a) if var == "l1" else a
    return PFOperator(
        var,
        lam * (1 - lam),
        (first - lam) * 2,
        RatFunc.const(-a * (1 - a), order),
        N,
        A,
    )


def hypergeometric_parameters(var: str, N: int, A: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(a, b; c) of the 2F1 annihilated by pf_make(var, N, A)."""
    a = Fraction(A, N)
    c = 2 - 2 * a if var == "l1" else 2 * a
    return a, 1 - a, c


def pf_apply(D: PFOperator, e: RadicalElem) -> RadicalElem:
    return D.apply(e)


def pf_conjugate(D: PFOperator, g: TildeG2Elem) -> PFOperator:
    """chi(g) * D * chi(g)^-1 as an operator in the same variable."""
    chi = ga_cocycle_value("chi", g)
    chi_inv = chi.inverse()
    first = chi_inv.derive(D.var)
    second = first.derive(D.var)
    log1 = _as_ratfunc(chi * first)
    log2 = _as_ratfunc(chi * second)
    a = D.a
    b = _add(_mul(a, log1, 2), D.b)
    c = _add(_add(_mul(a, log2), _mul(D.b, log1)), D.c)
    return PFOperator(D.var, a, b, c, D.N, D.A)


def _mul(x: Coefficient, y: Coefficient, k: int = 1) -> Coefficient:
    if isinstance(x, RatFunc) and isinstance(y, RatFunc):
        return x * y * k
    N, A = (x.N, x.A) if isinstance(x, KummerElem) else (y.N, y.A)
    return (_as_kummer(x, N, A) * _as_kummer(y, N, A)).scale(k)


def _add(x: Coefficient, y: Coefficient) -> Coefficient:
    if isinstance(x, RatFunc) and isinstance(y, RatFunc):
        return x + y
    N, A = (x.N, x.A) if isinstance(x, KummerElem) else (y.N, y.A)
    return _as_ratfunc(_as_kummer(x, N, A) + _as_kummer(y, N, A))


def _lambda_map(D: PFOperator, g: TildeG2Elem) -> RatFunc:
    rho = g.rho1 if D.var == "l1" else g.rho2
    return rho.s3.lambda_image(RatFunc.var(D.var, 2 * D.N))


def pf_conjugate_pullback(D: PFOperator, g: TildeG2Elem) -> PFOperator:
    """
    chi(g) D chi(g)^-1 rewritten with derivatives in l' = g^#(l).

    With M = g^#(l) and d/dl = M' d/dl', an operator a d^2 + b d + c in l
    becomes a M'^2 d'^2 + (a M'' + b M') d' + c.

    Args:
        D: operator in l1 or l2
        g: group element

    Returns:
        The conjugated operator with coefficients in front of d/dl'
    """
    E = pf_conjugate(D, g)
    M = _lambda_map(D, g)
    m1 = M.diff(D.var)
    m2 = m1.diff(D.var)
    return PFOperator(
        D.var,
        _mul(E.a, m1 * m1),
        _add(_mul(E.a, m2), _mul(E.b, m1)),
        E.c,
        D.N,
        D.A,
    )


def pf_pulled_operator(D: PFOperator, g: TildeG2Elem) -> PFOperator:
    """delta(g)^-1 times D with coefficients pulled back by g^#."""
    name = "delta1" if D.var == "l1" else "delta2"
    delta_inv = ga_cocycle_value(name, g).inverse()
    coeffs = []
    for coeff in D.coefficients():
        pulled = ga_substitute(g, _as_kummer(coeff, D.N, D.A))
        coeffs.append(_as_ratfunc(pulled * delta_inv))
    return PFOperator(D.var, coeffs[0], coeffs[1], coeffs[2], D.N, D.A)


def pf_verify_conjugation(D: PFOperator, g: TildeG2Elem) -> bool:
    """chi D chi^-1 = delta^-1 D^g exactly, in the variable g^#(l)."""
    lhs = pf_conjugate_pullback(D, g)
    rhs = pf_pulled_operator(D, g)
    if lhs != rhs:
        logger.debug(f"operator conjugation fails at {g}: {lhs} vs {rhs}")
        return False
    return True


# Certificate identities


def certificate_integrand(N: int, exponent: int, var: str) -> XKummerElem:
    """x^(-e/N) (1-x)^(-e/N) (1-l x)^(-e/N) with l = l1 or l2."""
    v1 = -exponent if var == "l1" else 0
    v2 = -exponent if var == "l2" else 0
    return XKummerElem.monomial((-exponent, -exponent, v1, v2), N, exponent)


def certificate_primitive(N: int, exponent: int, var: str, coefficient: Fraction = None) -> XKummerElem:
    """H = -(e/N) x(1-x)/(1-l x) * integrand, or a corrupted coefficient."""
    order = 2 * N
    if coefficient is None:
        coefficient = -Fraction(exponent, N)
    x = RatFunc.var("x", order)
    lam = RatFunc.var(var, order)
    factor = x * (1 - x) / (1 - lam * x) * coefficient
    return certificate_integrand(N, exponent, var).scale(factor)


@dataclass
class CertificateResult:
    N: int
    A: int
    holds: bool
    mirror_holds: bool
    corrupted_fails: Optional[bool] = None

    @property
    def passed(self) -> bool:
        ok = self.holds and self.mirror_holds
        return ok if self.corrupted_fails is None else ok and self.corrupted_fails

    def to_dict(self) -> Dict:
        return {
            "N": self.N,
            "A": self.A,
            "holds": self.holds,
            "mirror_holds": self.mirror_holds,
            "corrupted_fails": self.corrupted_fails,
        }


def _certificate_holds(N: int, A: int, var: str, coefficient: Optional[Fraction] = None) -> bool:
    exponent = A if var == "l1" else N - A
    D = pf_make(var, N, A)
    f = certificate_integrand(N, exponent, var)
    H = certificate_primitive(N, exponent, var, coefficient)
    lhs = D.apply(f)
    rhs = H.derive("x")
    return lhs == rhs


def pf_certificate_identity(N: int, A: int, negative_control: bool = False) -> CertificateResult:
    """
    Check D_l1(f) = dH/dx exactly, together with the mirrored l2 identity.

    Args:
        N: cover degree
        A: branch exponent
        negative_control: also check that H with coefficient -A fails

    Returns:
        CertificateResult
    """
    validate_pair(N, A)
    result = CertificateResult(
        N, A,
        holds=_certificate_holds(N, A, "l1"),
        mirror_holds=_certificate_holds(N, A, "l2"),
    )
    if negative_control:
        result.corrupted_fails = not _certificate_holds(N, A, "l1", Fraction(-A))
    logger.info(f"certificate identity N={N} A={A}: {result.to_dict()}")
    return result


@dataclass
class OneDimResult:
    N: int
    A: int
    antiderivative_holds: bool
    mirror_holds: bool
    closed_form: KummerElem
    mirror_closed_form: KummerElem
    endpoints_match: bool

    @property
    def passed(self) -> bool:
        return self.antiderivative_holds and self.mirror_holds and self.endpoints_match

    def to_dict(self) -> Dict:
        return {
            "N": self.N,
            "A": self.A,
            "antiderivative_holds": self.antiderivative_holds,
            "mirror_holds": self.mirror_holds,
            "endpoints_match": self.endpoints_match,
            "closed_form": str(self.closed_form),
            "mirror_closed_form": str(self.mirror_closed_form),
        }


def onedim_integrand(N: int, A: int, mirror: bool = False) -> XKummerElem:
    """
    (A/N) (1-l2 x)^(A/N - 1) (1-l1 x)^(-1-A/N), or with l1, l2 and
    A, N - A exchanged.
    """
    order = 2 * N
    x = RatFunc.var("x", order)
    l1 = RatFunc.var("l1", order)
    l2 = RatFunc.var("l2", order)
    if mirror:
        e = N - A
        mono = XKummerElem.monomial((0, 0, e, -e), N, A)
        return mono.scale(Fraction(e, N) / ((1 - l1 * x) * (1 - l2 * x)))
    mono = XKummerElem.monomial((0, 0, -A, A), N, A)
    return mono.scale(Fraction(A, N) / ((1 - l2 * x) * (1 - l1 * x)))


def onedim_antiderivative(N: int, A: int, mirror: bool = False) -> XKummerElem:
    """((1-l2 x)/(1-l1 x))^(A/N) / (l1 - l2), or its mirror."""
    order = 2 * N
    l1 = RatFunc.var("l1", order)
    l2 = RatFunc.var("l2", order)
    if mirror:
        e = N - A
        return XKummerElem.monomial((0, 0, e, -e), N, A).scale(1 / (l2 - l1))
    return XKummerElem.monomial((0, 0, -A, A), N, A).scale(1 / (l1 - l2))


def onedim_closed_form(N: int, A: int, mirror: bool = False) -> KummerElem:
    """
    Value of the one-dimensional integral over [0, 1] as a Kummer element:
    ((1-l2)^(A/N) (1-l1)^(-A/N) - 1)/(l1 - l2), or the mirrored
    ((1-l1)^((N-A)/N) (1-l2)^(-(N-A)/N) - 1)/(l2 - l1).
    """
    order = 2 * N
    l1 = RatFunc.var("l1", order)
    l2 = RatFunc.var("l2", order)
    one = KummerElem.one(N, A)
    if mirror:
        e = N - A
        return (KummerElem.monomial((0, e, 0, -e), N, A) - one).scale(1 / (l2 - l1))
    return (KummerElem.monomial((0, -A, 0, A), N, A) - one).scale(1 / (l1 - l2))


def x_endpoint(e: XKummerElem, endpoint: int) -> KummerElem:
    """
    Restrict an element without X, W roots (or with them at harmless
    exponents) to x = 0 or x = 1, landing in the Kummer algebra:
    V1 -> 1, V2 -> 1 at x = 0 and V1 -> v1, V2 -> v2 at x = 1.
    """
    if endpoint not in (0, 1):
        raise StructuralError("endpoint must be 0 or 1")
    out = KummerElem.zero(e.N, e.A)
    value = RatFunc.const(endpoint, e.order)
    for (ex, ew, ev1, ev2), coeff in e.terms.items():
        vanishing = (endpoint == 0 and ex) or (endpoint == 1 and ew)
        if vanishing:
            continue
        c = coeff.substitute({"x": value})
        exps = (0, 0, 0, 0) if endpoint == 0 else (0, ev1, 0, ev2)
        out = out + KummerElem.monomial(exps, e.N, e.A, c)
    return out


def pf_onedim_reduction(N: int, A: int) -> OneDimResult:
    """
    Verify the antiderivative identities exactly and emit the closed forms.

    Args:
        N: cover degree
        A: branch exponent

    Returns:
        OneDimResult with both closed forms as Kummer elements
    """
    validate_pair(N, A)
    holds = onedim_antiderivative(N, A).derive("x") == onedim_integrand(N, A)
    mirror = onedim_antiderivative(N, A, True).derive("x") == onedim_integrand(N, A, True)
    closed = onedim_closed_form(N, A)
    mirror_closed = onedim_closed_form(N, A, True)
    endpoints = (
        x_endpoint(onedim_antiderivative(N, A), 1) - x_endpoint(onedim_antiderivative(N, A), 0) == closed
        and x_endpoint(onedim_antiderivative(N, A, True), 1)
        - x_endpoint(onedim_antiderivative(N, A, True), 0) == mirror_closed
    )
    result = OneDimResult(N, A, holds, mirror, closed, mirror_closed, endpoints)
    logger.info(f"one-dimensional reduction N={N} A={A}: passed={result.passed}")
    return result


def onedim_has_pole_on_diagonal(N: int, A: int) -> bool:
    """The closed form has a pole along l1 = l2."""
    closed = onedim_closed_form(N, A)
    lam = RatFunc.var("l1", 2 * N)
    for coeff in closed.terms.values():
        try:
            coeff.substitute({"l2": lam})
        except (PoleError, ZeroDivisionError):
            return True
    return False


# Homogeneous kernel


def hypergeometric_coefficients(a: Fraction, b: Fraction, c: Fraction, M: int) -> List[Fraction]:
    """First M Taylor coefficients of 2F1(a, b; c; t)."""
    coeffs = [Fraction(1)]
    for n in range(M - 1):
        coeffs.append(coeffs[-1] * (a + n) * (b + n) / ((c + n) * (n + 1)))
    return coeffs


def pf_series_kernel_check(var: str, N: int, A: int, M: int = 12,
                           c_shift: Fraction = Fraction(0)) -> Dict[str, object]:
    """
    Apply the operator to the degree-(M-1) truncation of its 2F1 solution.

    Every coefficient below degree M-1 must cancel; the degree M-1 term is
    the truncation remainder and must survive.

    Args:
        var: "l1" or "l2"
        N: cover degree
        A: branch exponent
        M: number of series terms
        c_shift: added to c (nonzero shifts are negative controls)

    Returns:
        dict with "cancelled" (bool), "lowest_degree" and "passed"
    """
    D = pf_make(var, N, A)
    a, b, c = hypergeometric_parameters(var, N, A)
    coeffs = hypergeometric_coefficients(a, b, c + c_shift, M)
    lam = RatFunc.var(var, 2 * N)
    series = RatFunc.const(0, 2 * N)
    for n, coeff in enumerate(coeffs):
        series = series + lam**n * coeff
    image = D.apply(KummerElem.scalar(series, N, A)).scalar_value()
    index = 0 if var == "l1" else 1
    degrees = sorted(exps[index] for exps in image.numerator.terms())
    lowest = degrees[0] if degrees else None
    cancelled = lowest is not None and lowest >= M - 1
    return {
        "var": var,
        "M": M,
        "lowest_degree": lowest,
        "cancelled": cancelled,
        "passed": cancelled and lowest == M - 1,
    }
