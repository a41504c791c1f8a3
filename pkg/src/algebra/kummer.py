"""
Monomial algebras of N-th roots over Q(zeta_2N)(l1, l2, x).

An element is a sparse map from root exponent tuples, each entry in
[0, N), to RatFunc coefficients. Products and powers fold w^N back into the
coefficient as its radicand; negative exponents fold as
w^-k = w^(N-k) / radicand. The folded monomials are a basis over the
coefficient field, so zero-testing and equality are syntactic.

KummerElem     roots u1, v1, u2, v2 of l1, 1-l1, l2, 1-l2
XKummerElem    roots X, W, V1, V2 of x, 1-x, 1-l1*x, 1-l2*x
"""

from fractions import Fraction
from typing import Callable, ClassVar, Dict, Mapping, Optional, Tuple, Union

import mpmath

from src.algebra.cyclo import CycloNum
from src.algebra.ratfunc import VARIABLES, RatFunc, to_mpmath
from src.utils.error_handler import FieldDivisionError, PoleError, StructuralError

Exps = Tuple[int, ...]
Coefficient = Union[int, Fraction, CycloNum, RatFunc]


class RadicalElem:
    """Shared arithmetic of the root algebras; subclasses fix the roots."""

    ROOTS: ClassVar[Tuple[str, ...]] = ()
    _radicand_cache: ClassVar[Dict[Tuple[type, int], Tuple[RatFunc, ...]]] = {}
    _dlog_cache: ClassVar[Dict[Tuple[type, int, str], Tuple[RatFunc, ...]]] = {}

    __slots__ = ("terms", "N", "A", "_hash")

    def __init__(self, terms: Mapping[Exps, RatFunc], N: int, A: int):
        self.terms: Dict[Exps, RatFunc] = {k: v for k, v in terms.items() if not v.is_zero()}
        self.N = N
        self.A = A
        self._hash = None

    # Radicands

    @classmethod
    def build_radicands(cls, order: int) -> Tuple[RatFunc, ...]:
        raise NotImplementedError

    @classmethod
    def radicands(cls, order: int) -> Tuple[RatFunc, ...]:
        key = (cls, order)
        if key not in cls._radicand_cache:
            cls._radicand_cache[key] = cls.build_radicands(order)
        return cls._radicand_cache[key]

    @classmethod
    def log_derivatives(cls, order: int, var: str) -> Tuple[RatFunc, ...]:
        """r'/r for every radicand r."""
        key = (cls, order, var)
        if key not in cls._dlog_cache:
            cls._dlog_cache[key] = tuple(r.diff(var) / r for r in cls.radicands(order))
        return cls._dlog_cache[key]

    @property
    def order(self) -> int:
        return 2 * self.N

    # Constructors

    @classmethod
    def zero(cls, N: int, A: int):
        return cls({}, N, A)

    @classmethod
    def scalar(cls, value: Coefficient, N: int, A: int):
        coeff = value if isinstance(value, RatFunc) else RatFunc.const(value, 2 * N)
        return cls({(0,) * len(cls.ROOTS): coeff}, N, A)

    @classmethod
    def one(cls, N: int, A: int):
        return cls.scalar(1, N, A)

    @classmethod
    def monomial(cls, exps: Exps, N: int, A: int, coeff: Coefficient = 1):
        """coeff * prod w_j^exps[j] for arbitrary integer exponents, folded."""
        c = coeff if isinstance(coeff, RatFunc) else RatFunc.const(coeff, 2 * N)
        folded, c = cls._fold(tuple(exps), c, N)
        return cls({folded: c}, N, A)

    @classmethod
    def gen(cls, name: str, N: int, A: int):
        if name not in cls.ROOTS:
            raise StructuralError(f"{cls.__name__} has no root {name!r}; roots are {cls.ROOTS}")
        exps = tuple(1 if r == name else 0 for r in cls.ROOTS)
        return cls.monomial(exps, N, A)

    @classmethod
    def _fold(cls, exps: Exps, coeff: RatFunc, N: int) -> Tuple[Exps, RatFunc]:
        out = []
        rads = cls.radicands(2 * N)
        for j, e in enumerate(exps):
            q, r = divmod(e, N)
            if q:
                coeff = coeff * rads[j] ** q
            out.append(r)
        return tuple(out), coeff

    # Predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """Single folded monomial with a nonzero coefficient."""
        return len(self.terms) == 1

    def is_scalar(self) -> bool:
        return self.is_zero() or set(self.terms) == {(0,) * len(self.ROOTS)}

    def scalar_value(self) -> RatFunc:
        if not self.is_scalar():
            raise StructuralError(f"{self} is not a scalar")
        return self.terms.get((0,) * len(self.ROOTS), RatFunc.const(0, self.order))

    def single_term(self) -> Tuple[Exps, RatFunc]:
        if not self.is_unit():
            raise StructuralError(f"{self} is not a single monomial")
        return next(iter(self.terms.items()))

    # Arithmetic

    def _check(self, other) -> "RadicalElem":
        if isinstance(other, (int, Fraction, CycloNum, RatFunc)):
            return type(self).scalar(other, self.N, self.A)
        if type(other) is not type(self):
            raise StructuralError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if (other.N, other.A) != (self.N, self.A):
            raise StructuralError(
                f"parameter mismatch: (N, A) = {(self.N, self.A)} vs {(other.N, other.A)}"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return type(self)(terms, self.N, self.A)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -v for k, v in self.terms.items()}, self.N, self.A)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        out: Dict[Exps, RatFunc] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps, coeff = self._fold(tuple(a + b for a, b in zip(e1, e2)), c1 * c2, self.N)
                out[exps] = out[exps] + coeff if exps in out else coeff
        return type(self)(out, self.N, self.A)

    __rmul__ = __mul__

    def scale(self, factor: Coefficient):
        if not isinstance(factor, RatFunc):
            factor = RatFunc.const(factor, self.order)
        return type(self)({k: v * factor for k, v in self.terms.items()}, self.N, self.A)

    def inverse(self):
        if self.is_zero():
            raise FieldDivisionError(f"inverse of zero in {type(self).__name__}")
        if not self.is_unit():
            raise StructuralError("inverse is only available for single-monomial units")
        exps, coeff = self.single_term()
        return type(self).monomial(tuple(-e for e in exps), self.N, self.A, coeff.inverse())

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_unit():
            exps, coeff = self.single_term()
            return type(self).monomial(tuple(e * k for e in exps), self.N, self.A, coeff**k)
        result = type(self).one(self.N, self.A)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derive(self, var: str):
        """Derivation extending d/dvar on coefficients; d w/dvar = w * r'/(N r)."""
        dlogs = self.log_derivatives(self.order, var)
        out: Dict[Exps, RatFunc] = {}
        for exps, coeff in self.terms.items():
            d = coeff.diff(var)
            weight = RatFunc.const(0, self.order)
            for e, dl in zip(exps, dlogs):
                if e:
                    weight = weight + dl * Fraction(e, self.N)
            if not weight.is_zero():
                d = d + coeff * weight
            if not d.is_zero():
                out[exps] = d
        return type(self)(out, self.N, self.A)

    def map_coefficients(self, fn: Callable[[RatFunc], RatFunc]):
        return type(self)({k: fn(v) for k, v in self.terms.items()}, self.N, self.A)

    # Evaluation

    def eval_numeric(self, point: Mapping[str, object], precision: int = 30) -> mpmath.mpc:
        """
        Value with every root mapped to the principal real N-th root of its
        (positive) radicand and zeta_2N to exp(pi i / N).
        """
        with mpmath.workdps(precision + 10):
            fn = self.compile()
            value = fn(*[to_mpmath(point.get(name, 0)) for name in VARIABLES])
        return +value

    def compile(self) -> Callable:
        """Callable f(l1, l2, x) in the current mpmath context."""
        rads = [r.compile() for r in self.radicands(self.order)]
        terms = [(exps, coeff.compile(), coeff) for exps, coeff in self.terms.items()]
        N = self.N
        names = self.ROOTS

        def evaluate(*args):
            roots = []
            for name, r in zip(names, rads):
                value = r(*args)
                if isinstance(value, mpmath.mpc):
                    value = value.real
                if value <= 0:
                    raise PoleError(f"radicand of {name} is not positive at {args}", name)
                roots.append(mpmath.root(value, N))
            acc = mpmath.mpc(0)
            for exps, fn, coeff in terms:
                den = fn.den(*args)
                if den == 0:
                    raise PoleError(
                        f"denominator {coeff.denominator} vanishes at {args}", str(coeff.denominator)
                    )
                t = fn.num(*args) / den
                for w, e in zip(roots, exps):
                    if e:
                        t = t * w**e
                acc += t
            return acc

        return evaluate

    def compile_fibre(self, point: Mapping[str, object], reflect: bool = False) -> Callable:
        """
        Callable f(x) with l1, l2 fixed at the exact values in point.

        Coefficients and radicands are specialised once; only roots with a
        nonzero exponent are evaluated per call. With reflect, the callable
        is z -> f(1 - z), so abscissae near 1 keep their distance to 1.
        """
        order = self.order
        values = {
            name: RatFunc.const(Fraction(str(point[name])), order)
            for name in ("l1", "l2")
            if name in point
        }
        if reflect:
            values["x"] = 1 - RatFunc.var("x", order)
        rads = [r.substitute(values) for r in self.radicands(order)]
        used = sorted({i for exps in self.terms for i, e in enumerate(exps) if e})
        roots = [(i, self.ROOTS[i], rads[i].compile()) for i in used]
        terms = []
        for exps, coeff in self.terms.items():
            special = coeff.substitute(values)
            if not special.is_zero():
                powers = tuple((used.index(i), e) for i, e in enumerate(exps) if e)
                terms.append((powers, special.compile(), special))
        N = self.N
        zero = mpmath.mpf(0)

        def evaluate(x):
            args = (zero, zero, x)
            w = []
            for _, name, r in roots:
                value = r(*args)
                if isinstance(value, mpmath.mpc):
                    value = value.real
                if value <= 0:
                    raise PoleError(f"radicand of {name} is not positive at x = {x}", name)
                w.append(mpmath.root(value, N))
            acc = mpmath.mpf(0)
            for powers, fn, coeff in terms:
                den = fn.den(*args)
                if den == 0:
                    raise PoleError(f"denominator {coeff.denominator} vanishes at x = {x}", str(coeff.denominator))
                t = fn.num(*args) / den
                for slot, e in powers:
                    t = t * w[slot] ** e
                acc += t
            return acc

        return evaluate

    # Comparison and rendering

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum, RatFunc)):
            other = type(self).scalar(other, self.N, self.A)
        if type(other) is not type(self):
            return NotImplemented
        return (self.N, self.A) == (other.N, other.A) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.N, self.A, frozenset(self.terms.items())))
        return self._hash

    def render_monomial(self, exps: Exps) -> str:
        return "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(self.ROOTS, exps) if e
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            mono = self.render_monomial(exps)
            coeff = str(self.terms[exps])
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == "1":
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self}; N={self.N}, A={self.A})"


class KummerElem(RadicalElem):
    """Element of Q(zeta_2N)(l1, l2)[u1, v1, u2, v2] with u_i^N = l_i, v_i^N = 1 - l_i."""

    ROOTS = ("u1", "v1", "u2", "v2")
    __slots__ = ()

    @classmethod
    def build_radicands(cls, order: int) -> Tuple[RatFunc, ...]:
        l1 = RatFunc.var("l1", order)
        l2 = RatFunc.var("l2", order)
        return (l1, 1 - l1, l2, 1 - l2)


class XKummerElem(RadicalElem):
    """Roots X, W, V1, V2 of x, 1 - x, 1 - l1*x, 1 - l2*x over Q(zeta_2N)(l1, l2, x)."""

    ROOTS = ("X", "W", "V1", "V2")
    __slots__ = ()

    @classmethod
    def build_radicands(cls, order: int) -> Tuple[RatFunc, ...]:
        l1 = RatFunc.var("l1", order)
        l2 = RatFunc.var("l2", order)
        x = RatFunc.var("x", order)
        return (x, 1 - x, 1 - l1 * x, 1 - l2 * x)


# Module-level operations


def km_add(a: RadicalElem, b: RadicalElem) -> RadicalElem:
    return a + b


def km_sub(a: RadicalElem, b: RadicalElem) -> RadicalElem:
    return a - b


def km_neg(a: RadicalElem) -> RadicalElem:
    return -a


def km_scale(a: RadicalElem, factor: Coefficient) -> RadicalElem:
    return a.scale(factor)


def km_mul(a: RadicalElem, b: RadicalElem) -> RadicalElem:
    return a * b


def km_pow(a: RadicalElem, k: int) -> RadicalElem:
    """a^k; negative k only for single-monomial units."""
    return a ** k


def km_inverse(a: RadicalElem) -> RadicalElem:
    return a.inverse()


def km_derive(a: RadicalElem, var: str) -> RadicalElem:
    if var not in VARIABLES:
        raise StructuralError(f"unknown variable {var!r}")
    return a.derive(var)


def km_eval(
    a: RadicalElem,
    lambda1: object,
    lambda2: object,
    precision: int = 30,
    x: Optional[object] = None,
) -> mpmath.mpc:
    point = {"l1": lambda1, "l2": lambda2}
    if x is not None:
        point["x"] = x
    return a.eval_numeric(point, precision)


def kummer_generators(N: int, A: int) -> Tuple[KummerElem, KummerElem, KummerElem, KummerElem]:
    """(u1, v1, u2, v2)."""
    return tuple(KummerElem.gen(name, N, A) for name in KummerElem.ROOTS)
