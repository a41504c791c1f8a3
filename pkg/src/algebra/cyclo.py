"""
Exact arithmetic in the cyclotomic field Q(zeta_2N).

Elements are coefficient vectors of length phi(2N) over Q, reduced modulo
the 2N-th cyclotomic polynomial, so the representation is unique and every
nonzero element is invertible. The complex embedding is fixed once:
zeta_2N -> exp(pi i / N).
"""

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import mpmath
from sympy import Symbol, cyclotomic_poly, totient

from src.utils.error_handler import FieldDivisionError, StructuralError

Rational = Union[int, Fraction]

_x = Symbol("x")


@lru_cache(maxsize=None)
def modulus_coeffs(order: int) -> Tuple[int, ...]:
    """Coefficients of the order-th cyclotomic polynomial, constant term first."""
    coeffs = cyclotomic_poly(order, _x, polys=True).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def field_degree(order: int) -> int:
    return int(totient(order))


def _reduce(poly: List[Fraction], order: int) -> Tuple[Fraction, ...]:
    """Reduce a coefficient list (constant first) modulo the monic modulus."""
    m = modulus_coeffs(order)
    d = len(m) - 1
    p = list(poly)
    for top in range(len(p) - 1, d - 1, -1):
        c = p[top]
        if c:
            shift = top - d
            for i in range(d + 1):
                p[shift + i] -= c * m[i]
    p = p[:d] + [Fraction(0)] * max(0, d - len(p))
    return tuple(Fraction(c) for c in p[:d])


@lru_cache(maxsize=None)
def power_table(order: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Reduced coefficient vectors of zeta^k for k = 0 .. order-1."""
    d = field_degree(order)
    current = [Fraction(0)] * d
    current[0] = Fraction(1)
    table = [tuple(current)]
    for _ in range(1, order):
        shifted = [Fraction(0)] + list(current)
        current = list(_reduce(shifted, order))
        table.append(tuple(current))
    return tuple(table)


# Polynomial helpers over Q, constant term first, no trailing zeros.

def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = _trim(list(a))
    lead = b[-1]
    quot = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        c = rem[-1] / lead
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            rem[shift + i] -= c * bi
        rem.pop()
        _trim(rem)
    return _trim(quot), rem


def _xgcd_inverse(a: Sequence[Fraction], m: Sequence[Fraction]) -> List[Fraction]:
    """s with s*a = 1 modulo m, by the extended Euclidean algorithm."""
    old_r, r = _trim(list(a)), _trim(list(m))
    old_s, s = [Fraction(1)], []
    while r:
        q, rem = _poly_divmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, _poly_sub(old_s, _poly_mul(q, s))
    if len(old_r) != 1:
        raise FieldDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = old_r[0]
    return [x / c for x in old_s]


class CycloNum:
    """
    Element of Q(zeta_order), order = 2N.

    Immutable; ``coeffs`` is the reduced coefficient vector in the power
    basis 1, zeta, ..., zeta^(phi-1).
    """

    __slots__ = ("coeffs", "order", "_hash")

    def __init__(self, coeffs: Iterable[Rational], order: int):
        d = field_degree(order)
        values = [Fraction(c) for c in coeffs]
        if len(values) != d:
            values = list(_reduce(values + [Fraction(0)] * max(0, d - len(values)), order))
        self.coeffs: Tuple[Fraction, ...] = tuple(values)
        self.order = order
        self._hash = None

    # Constructors

    @classmethod
    def from_rational(cls, q: Rational, order: int) -> "CycloNum":
        d = field_degree(order)
        return cls([Fraction(q)] + [Fraction(0)] * (d - 1), order)

    @classmethod
    def zero(cls, order: int) -> "CycloNum":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int) -> "CycloNum":
        return cls.from_rational(1, order)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycloNum":
        """zeta_order^k for any integer k."""
        return cls(power_table(order)[k % order], order)

    @classmethod
    def from_poly(cls, coeffs: Sequence[Rational], order: int) -> "CycloNum":
        """Reduce an arbitrary polynomial in zeta (constant term first)."""
        return cls(_reduce([Fraction(c) for c in coeffs], order), order)

    # Predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise StructuralError(f"{self} is not rational")
        return self.coeffs[0]

    # Arithmetic

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise StructuralError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            c = other.coeffs[0]
            return CycloNum([a * c for a in self.coeffs], self.order)
        if self.is_rational():
            c = self.coeffs[0]
            return CycloNum([b * c for b in other.coeffs], self.order)
        product = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        product[i + j] += a * b
        return CycloNum(_reduce(product, self.order), self.order)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise FieldDivisionError("inverse of zero in Q(zeta)")
        if self.is_rational():
            return CycloNum.from_rational(1 / self.coeffs[0], self.order)
        modulus = [Fraction(c) for c in modulus_coeffs(self.order)]
        inv = _xgcd_inverse(list(self.coeffs), modulus)
        return CycloNum(_reduce(inv, self.order), self.order)

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

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "CycloNum":
        """Image under the automorphism zeta -> zeta^k (k coprime to the order)."""
        table = power_table(self.order)
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, t in enumerate(table[(i * k) % self.order]):
                    out[j] += c * t
        return CycloNum(out, self.order)

    def root_of_unity_exponent(self):
        """k with self = zeta^k, or None if self is not a root of unity."""
        table = power_table(self.order)
        for k, t in enumerate(table):
            if t == self.coeffs:
                return k
        return None

    # Comparison and rendering

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = "z" if i == 1 else f"z^{i}"
                parts.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CycloNum({self}; order={self.order})"

    # Numerics

    def embed(self, precision: int = 30) -> mpmath.mpc:
        """Complex value under zeta_order -> exp(2 pi i / order)."""
        return embed_complex(self, precision)


def cyclo_arith(a: CycloNum, b: CycloNum, op: str) -> CycloNum:
    """Exact add/sub/mul with an order check."""
    if a.order != b.order:
        raise StructuralError(f"cyclotomic order mismatch: {a.order} vs {b.order}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyclo_inv(a: CycloNum) -> CycloNum:
    return a.inverse()


def cyclo_pow(a: CycloNum, k: int) -> CycloNum:
    """a^k; negative k goes through the inverse."""
    return a ** k


def zeta_power(k: int, N: int) -> CycloNum:
    """zeta_N^k inside Q(zeta_2N)."""
    return CycloNum.zeta(2 * N, 2 * k)


def to_mpf(q: Rational) -> mpmath.mpf:
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def embed_complex(a: CycloNum, precision: int = 30) -> mpmath.mpc:
    """
    Complex embedding at zeta_2N = exp(pi i / N).

    Evaluated with guard digits so the result is within 10^(1-precision).
    """
    if precision < 15:
        raise ValueError("precision must be at least 15 digits")
    with mpmath.workdps(precision + 10):
        z = mpmath.expjpi(mpmath.mpf(2) / a.order)
        acc = mpmath.mpc(0)
        for c in reversed(a.coeffs):
            acc = acc * z + to_mpf(c)
    return +acc
