"""
Exact rational functions in l1, l2, x over Q(zeta_2N).

Numerators and denominators live in one sparse sympy ring
Q[l1, l2, x, zeta] (graded lexicographic, l1 > l2 > x > zeta); the field
element zeta is the primitive 2N-th root of unity, carried as a ring
generator and reduced modulo the cyclotomic polynomial after every
operation.

Canonical form:
    - num is reduced in zeta (degree below phi(2N));
    - den is zeta-free (denominators are rationalized by their Galois norm);
    - gcd(num, den) = 1 and den is monic under grlex;
    - zero is 0/1.
With that normalization equal functions have equal (num, den), so equality
is a dictionary comparison.
"""

from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

import mpmath
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from src.algebra.cyclo import CycloNum, field_degree, power_table, to_mpf
from src.utils.error_handler import FieldDivisionError, PoleError, StructuralError

R, _L1, _L2, _X, _ZETA = ring("l1,l2,x,zeta", QQ, grlex)

VARIABLES: Tuple[str, ...] = ("l1", "l2", "x")
_GENS = {"l1": _L1, "l2": _L2, "x": _X}
_INDEX = {"l1": 0, "l2": 1, "x": 2}
_ZETA_INDEX = 3

Scalar = Union[int, Fraction, CycloNum]


def _qq(q: Fraction):
    return QQ(q.numerator, q.denominator)


def _fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _units(order: int) -> Iterable[int]:
    return (k for k in range(2, order) if gcd(k, order) == 1)


def reduce_zeta(p, order: int):
    """Reduce a ring element modulo the order-th cyclotomic polynomial in zeta."""
    d = field_degree(order)
    if not p or p.degree(_ZETA_INDEX) < d:
        return p
    table = power_table(order)
    out: Dict[Tuple[int, ...], object] = {}
    for monom, coeff in p.items():
        e = monom[_ZETA_INDEX]
        if e < d:
            out[monom] = out.get(monom, QQ.zero) + coeff
            continue
        head = monom[:_ZETA_INDEX]
        for j, t in enumerate(table[e % order]):
            if t:
                key = head + (j,)
                out[key] = out.get(key, QQ.zero) + coeff * _qq(t)
    return R.from_dict({k: v for k, v in out.items() if v})


def cyclo_to_ring(c: CycloNum):
    return R.from_dict({(0, 0, 0, j): _qq(q) for j, q in enumerate(c.coeffs) if q})


def _canonical(num, den, order: int):
    if not den:
        raise FieldDivisionError("rational function with zero denominator")
    num = reduce_zeta(num, order)
    if not num:
        return R.zero, R.one
    if den.degree(_ZETA_INDEX) > 0:
        den = reduce_zeta(den, order)
        if not den:
            raise FieldDivisionError("denominator vanishes in Q(zeta)")
        if den.degree(_ZETA_INDEX) > 0:
            # multiply through by the remaining Galois conjugates of den
            conj = R.one
            for k in _units(order):
                conj = reduce_zeta(conj * den.compose(_ZETA, _ZETA**k), order)
            num = reduce_zeta(num * conj, order)
            den = reduce_zeta(den * conj, order)
            if den.degree(_ZETA_INDEX) > 0:
                raise StructuralError("denominator norm is not zeta-free")
    if den.is_ground:
        lc = den.LC
        return num.quo_ground(lc), R.one
    if not num.is_ground:
        _, num, den = num.cofactors(den)
    lc = den.LC
    return num.quo_ground(lc), den.monic()


class Poly:
    """Read-only view of a ring element as {(e_l1, e_l2, e_x): CycloNum}."""

    def __init__(self, element, order: int):
        self.element = element
        self.order = order

    def terms(self) -> Dict[Tuple[int, int, int], CycloNum]:
        d = field_degree(self.order)
        grouped: Dict[Tuple[int, int, int], list] = {}
        for monom, coeff in self.element.items():
            vec = grouped.setdefault(monom[:_ZETA_INDEX], [Fraction(0)] * d)
            vec[monom[_ZETA_INDEX]] += _fraction(coeff)
        return {k: CycloNum(v, self.order) for k, v in grouped.items() if any(v)}

    def is_zero(self) -> bool:
        return not self.element

    def __str__(self):
        terms = self.terms()
        if not terms:
            return "0"
        parts = []
        for exps in sorted(terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = terms[exps]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(VARIABLES, exps) if e
            )
            c = str(coeff)
            if not mono:
                parts.append(f"({c})" if "+" in c else c)
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}" if "+" in c else f"{c}*{mono}")
        return " + ".join(parts)


class RatFunc:
    """Canonical quotient num/den of ring elements; immutable."""

    __slots__ = ("num", "den", "order", "_hash")

    def __init__(self, num, den, order: int, canonical: bool = False):
        if not canonical:
            num, den = _canonical(num, den, order)
        self.num = num
        self.den = den
        self.order = order
        self._hash = None

    # Constructors

    @classmethod
    def const(cls, value: Scalar, order: int) -> "RatFunc":
        if isinstance(value, CycloNum):
            if value.order != order:
                raise StructuralError(f"cyclotomic order mismatch: {value.order} vs {order}")
            return cls(cyclo_to_ring(value), R.one, order, canonical=True)
        q = Fraction(value)
        return cls(R(_qq(q)), R.one, order, canonical=True)

    @classmethod
    def var(cls, name: str, order: int) -> "RatFunc":
        if name not in _GENS:
            raise StructuralError(f"unknown variable {name!r}; expected one of {VARIABLES}")
        return cls(_GENS[name], R.one, order, canonical=True)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "RatFunc":
        return cls.const(CycloNum.zeta(order, k), order)

    @classmethod
    def from_ring(cls, num, den, order: int) -> "RatFunc":
        return cls(num, den, order)

    # Predicates

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.den == R.one and self.num == R.one

    def is_constant(self) -> bool:
        """True when free of l1, l2 and x."""
        return self.den.is_ground and all(
            not any(m[:_ZETA_INDEX]) for m in self.num.itermonoms()
        )

    def constant_value(self) -> CycloNum:
        if not self.is_constant():
            raise StructuralError(f"{self} is not constant")
        d = field_degree(self.order)
        vec = [Fraction(0)] * d
        for monom, coeff in self.num.items():
            vec[monom[_ZETA_INDEX]] += _fraction(coeff)
        return CycloNum(vec, self.order)

    def depends_on(self, name: str) -> bool:
        i = _INDEX[name]
        return self.num.degree(i) > 0 or self.den.degree(i) > 0

    def degree(self, name: str) -> Tuple[int, int]:
        i = _INDEX[name]
        return max(self.num.degree(i), 0), max(self.den.degree(i), 0)

    @property
    def numerator(self) -> Poly:
        return Poly(self.num, self.order)

    @property
    def denominator(self) -> Poly:
        return Poly(self.den, self.order)

    # Arithmetic

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.order != self.order:
                raise StructuralError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction, CycloNum)):
            return RatFunc.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den, self.order)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den, self.order
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.order, canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RatFunc(R.zero, R.one, self.order, canonical=True)
        if other.is_one():
            return self
        if self.is_one():
            return other
        return RatFunc(self.num * other.num, self.den * other.den, self.order)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise FieldDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num, self.order)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFunc.const(1, self.order)
        return RatFunc(self.num**k, self.den**k, self.order)

    def diff(self, name: str) -> "RatFunc":
        """Quotient-rule derivative in l1, l2 or x."""
        gen = _GENS[name]
        dn = self.num.diff(gen)
        dd = self.den.diff(gen)
        if not dd:
            return RatFunc(dn, self.den, self.order)
        return RatFunc(dn * self.den - self.num * dd, self.den**2, self.order)

    def substitute(self, mapping: Mapping[str, "RatFunc"]) -> "RatFunc":
        """Simultaneous substitution of rational functions for variables."""
        values = {name: self._coerce(v) for name, v in mapping.items()}
        if not values:
            return self
        num_n, num_d = _substitute_poly(self.num, values)
        den_n, den_d = _substitute_poly(self.den, values)
        if not den_n:
            raise PoleError("substitution makes the denominator vanish", str(self.denominator))
        return RatFunc(num_n * den_d, num_d * den_n, self.order)

    # Evaluation

    def eval_exact(self, point: Mapping[str, Fraction]) -> CycloNum:
        """Value at an exact rational point; PoleError if den vanishes there."""
        den_value = _eval_rational(self.den, point)
        if den_value == 0:
            raise PoleError(
                f"denominator {self.denominator} vanishes at {_render_point(point)}",
                str(self.denominator),
            )
        d = field_degree(self.order)
        vec = [Fraction(0)] * d
        for monom, coeff in self.num.items():
            vec[monom[_ZETA_INDEX]] += _fraction(coeff) * _monomial_value(monom, point)
        return CycloNum([c / den_value for c in vec], self.order)

    def eval_numeric(self, point: Mapping[str, object], precision: int = 30) -> mpmath.mpc:
        """Value at a real point under zeta -> exp(2 pi i / order)."""
        with mpmath.workdps(precision + 10):
            f = self.compile()
            args = [to_mpmath(point.get(name, 0)) for name in VARIABLES]
            den = f.den(*args)
            if den == 0:
                raise PoleError(
                    f"denominator {self.denominator} vanishes at {_render_point(point)}",
                    str(self.denominator),
                )
            value = f.num(*args) / den
        return +value

    def compile(self) -> "CompiledRatFunc":
        """Callable on (l1, l2, x) mpf values in the current mpmath context."""
        return CompiledRatFunc(self)

    # Comparison and rendering

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            other = RatFunc.const(other, self.order)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.order == other.order and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.order, frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    def __str__(self):
        num = str(self.numerator)
        if self.den == R.one:
            return num
        return f"({num})/({self.denominator})"

    def __repr__(self):
        return f"RatFunc({self}; order={self.order})"


class CompiledRatFunc:
    """Term lists of a RatFunc with mpmath constants, for fast repeated evaluation."""

    def __init__(self, f: RatFunc):
        zeta = mpmath.expjpi(mpmath.mpf(2) / f.order)
        self._num = _compile_terms(f.num, zeta)
        self._den = _compile_terms(f.den, zeta)

    @staticmethod
    def _run(terms, args):
        acc = mpmath.mpf(0)
        for coeff, exps in terms:
            t = coeff
            for a, e in zip(args, exps):
                if e:
                    t = t * a**e
            acc += t
        return acc

    def num(self, *args):
        return self._run(self._num, args)

    def den(self, *args):
        return self._run(self._den, args)

    def __call__(self, *args):
        return self._run(self._num, args) / self._run(self._den, args)


def _compile_terms(p, zeta) -> Sequence[Tuple[object, Tuple[int, int, int]]]:
    grouped: Dict[Tuple[int, int, int], object] = {}
    for monom, coeff in p.items():
        key = monom[:_ZETA_INDEX]
        value = to_mpf(_fraction(coeff)) * zeta ** monom[_ZETA_INDEX]
        grouped[key] = grouped.get(key, 0) + value
    out = []
    for key, value in grouped.items():
        if isinstance(value, mpmath.mpc) and value.imag == 0:
            value = value.real
        out.append((value, key))
    return out


def to_mpmath(value) -> mpmath.mpf:
    """Exact rationals convert at the current precision; everything else via mpf."""
    if isinstance(value, (Fraction, int)):
        return to_mpf(value)
    return mpmath.mpf(value)


def _monomial_value(monom, point) -> Fraction:
    value = Fraction(1)
    for name, e in zip(VARIABLES, monom):
        if e:
            if name not in point:
                raise StructuralError(f"no value given for variable {name}")
            value *= Fraction(point[name]) ** e
    return value


def _eval_rational(p, point) -> Fraction:
    total = Fraction(0)
    for monom, coeff in p.items():
        total += _fraction(coeff) * _monomial_value(monom, point)
    return total


def _render_point(point) -> str:
    return ", ".join(f"{k}={v}" for k, v in sorted(point.items()))


def _substitute_poly(p, values: Mapping[str, RatFunc]):
    """P(values) as (numerator, denominator) ring elements, not yet canonical."""
    subs = [(name, _INDEX[name], v) for name, v in values.items()]
    top = {name: max(p.degree(i), 0) for name, i, _ in subs}
    num_pows: Dict[Tuple[str, int], object] = {}
    den_pows: Dict[Tuple[str, int], object] = {}

    def npow(name, e):
        key = (name, e)
        if key not in num_pows:
            num_pows[key] = values[name].num**e
        return num_pows[key]

    def dpow(name, e):
        key = (name, e)
        if key not in den_pows:
            den_pows[key] = values[name].den**e
        return den_pows[key]

    out = R.zero
    for monom, coeff in p.items():
        kept = list(monom)
        term = R.one
        for name, i, _ in subs:
            e = monom[i]
            kept[i] = 0
            term = term * npow(name, e) * dpow(name, top[name] - e)
        out += R({tuple(kept): coeff}) * term
    common = R.one
    for name, _, _ in subs:
        common = common * dpow(name, top[name])
    return out, common


# Module-level operations


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_derive(a: RatFunc, var: str) -> RatFunc:
    if var not in _INDEX:
        raise StructuralError(f"unknown variable {var!r}")
    return a.diff(var)


def rf_substitute(a: RatFunc, mapping: Mapping[str, RatFunc]) -> RatFunc:
    return a.substitute(mapping)


def rf_eval_exact(a: RatFunc, point: Mapping[str, Fraction]) -> CycloNum:
    return a.eval_exact(point)


def rf_eval_numeric(a: RatFunc, point: Mapping[str, object], precision: int = 30) -> mpmath.mpc:
    return a.eval_numeric(point, precision)


def rf_degree(a: RatFunc, var: str) -> Tuple[int, int]:
    return a.degree(var)


def variables(order: int) -> Tuple[RatFunc, RatFunc, RatFunc]:
    """(l1, l2, x) as rational functions over Q(zeta_order)."""
    return tuple(RatFunc.var(name, order) for name in VARIABLES)


def common_denominator(functions: Sequence[RatFunc]):
    """Least common multiple of the denominators, as a ring element."""
    out = R.one
    for f in functions:
        out = out.lcm(f.den)
    return out


def as_callable(f: RatFunc) -> Callable:
    return f.compile()
