"""
Rank Certificates

Exact images of the cycle families under the Picard-Fuchs system, their
transport by the group action, and rank certificates over the cyclotomic
field:

    - generator images for xi0^(i), xi1^(i), derived directly and again by
      kernel transport of the inhomogeneous right-hand side plus
      telescoping over i
    - the pole-locus evaluation matrix (expected rank 6)
    - rank of the six diagonal-span generators (expected 6)
    - rank of their 36 transports by the coset representatives (id, s),
      s in S3 (expected 36)

Functions are compared in the quotient ring Q(zeta)[u1, v1, u2, v2] /
(u_i^N + v_i^N - 1) after clearing one common denominator, whose normal
form has the monomial basis u^a v^b with 0 <= b < N per pair. Rank is
computed over Q(zeta_2N), which contains Q(zeta_N); dim over Q is
reported as phi(N) * rank.
"""

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import nextprime, primitive_root
from sympy.ntheory import nthroot_mod

from src.algebra.cyclo import CycloNum, field_degree
from src.algebra.kummer import KummerElem
from src.algebra.ratfunc import Poly, RatFunc, common_denominator
from src.backend.group_action import (
    S3_LABELS,
    TildeG2Elem,
    ga_cocycle_value,
    ga_element,
    ga_identity,
    ga_substitute,
    ga_tau,
    ga_tau_prime,
)
from src.backend.cycles import rho_power
from src.backend.params import validate_pair
from src.utils.error_handler import HypothesisError, StructuralError
from src.utils.logger import get_logger, log_performance

logger = get_logger(__name__)

Column = Tuple[int, int, int, int]


@dataclass
class DImageVector:
    """(first, second) image of a family under (D_l1, D_l2), with provenance."""

    first: KummerElem
    second: KummerElem
    provenance: str = ""

    def __add__(self, other: "DImageVector") -> "DImageVector":
        return DImageVector(self.first + other.first, self.second + other.second, self.provenance)

    def __sub__(self, other: "DImageVector") -> "DImageVector":
        return DImageVector(self.first - other.first, self.second - other.second, self.provenance)

    def scale(self, factor) -> "DImageVector":
        return DImageVector(self.first.scale(factor), self.second.scale(factor), self.provenance)

    def same_as(self, other: "DImageVector") -> bool:
        return self.first == other.first and self.second == other.second

    def to_dict(self) -> Dict[str, str]:
        return {"provenance": self.provenance, "first": str(self.first), "second": str(self.second)}


@dataclass
class SpanCertificate:
    """Rank of a generator list over Q(zeta_2N), with everything needed to recheck it."""

    name: str
    N: int
    A: int
    generators: List[DImageVector]
    rank: int
    basis_size: int
    fast_path: Optional[Dict[str, object]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def dim_Q(self) -> int:
        return field_degree(self.N) * self.rank

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "N": self.N,
            "A": self.A,
            "rank": self.rank,
            "generators_count": len(self.generators),
            "dim_Q": self.dim_Q,
            "phi_N": field_degree(self.N),
            "basis_size": self.basis_size,
            "generators": [g.to_dict() for g in self.generators],
            "fast_path": self.fast_path,
            "notes": self.notes,
        }


# Generator images


def _zeta_N(N: int, k: int) -> RatFunc:
    return RatFunc.zeta(2 * N, 2 * k)


def _prefactor(N: int, A: int) -> RatFunc:
    """(1 - zeta_N^A) / (l1 - l2)."""
    order = 2 * N
    l1 = RatFunc.var("l1", order)
    l2 = RatFunc.var("l2", order)
    return (1 - _zeta_N(N, A)) / (l1 - l2)


def _r_powers(N: int, A: int) -> Tuple[KummerElem, KummerElem]:
    """r^(A/N) and r^(-(N-A)/N) with r = (1-l2)/(1-l1)."""
    B = N - A
    return KummerElem.monomial((0, -A, 0, A), N, A), KummerElem.monomial((0, B, 0, -B), N, A)


def inhomogeneous_vector(N: int, A: int) -> DImageVector:
    """(1 - zeta^A) times the closed-form right-hand side of the inhomogeneous system."""
    ra, rb = _r_powers(N, A)
    one = KummerElem.one(N, A)
    c = _prefactor(N, A)
    return DImageVector((ra - one).scale(c), (rb - one).scale(c), "inhomogeneous")


def direct_image(kind: str, i: int, N: int, A: int) -> DImageVector:
    """c zeta^(Ai)/(l1 - l2) * (1, 1) for xi0, * (r^a, r^-b) for xi1."""
    factor = _prefactor(N, A) * _zeta_N(N, A * i)
    if kind == "xi0":
        one = KummerElem.one(N, A)
        return DImageVector(one.scale(factor), one.scale(factor), f"xi0^({i})")
    ra, rb = _r_powers(N, A)
    return DImageVector(ra.scale(factor), rb.scale(factor), f"xi1^({i})")


def rc_theta_transport(g: TildeG2Elem, vec: DImageVector) -> DImageVector:
    """(chi^-1 delta1^-1 g^#(first), chi^-1 delta2^-1 g^#(second))."""
    chi_inv = ga_cocycle_value("chi", g).inverse()
    d1 = ga_cocycle_value("delta1", g).inverse()
    d2 = ga_cocycle_value("delta2", g).inverse()
    return DImageVector(
        chi_inv * d1 * ga_substitute(g, vec.first),
        chi_inv * d2 * ga_substitute(g, vec.second),
        f"{g} . {vec.provenance}",
    )


def transported_images(N: int, A: int) -> Dict[str, List[DImageVector]]:
    """
    Images recovered from the inhomogeneous vector alone.

    T_i = Theta_{rho^i}(xi1 - xi0 image) is the image of xi1^(0) - xi0^(i);
    the xi0^(i) images sum to zero, so xi1^(0) = (1/N) sum T_i and
    xi0^(i) = xi1^(0) - T_i. The xi1^(i) images follow from the sheet
    relation xi1^(i) = zeta^(Ai) xi1^(0).
    """
    base = inhomogeneous_vector(N, A)
    transports = [rc_theta_transport(rho_power(N, A, i), base) for i in range(N)]
    total = transports[0]
    for t in transports[1:]:
        total = total + t
    xi1_0 = total.scale(RatFunc.const(1, 2 * N) / N)
    xi0 = [(xi1_0 - t) for t in transports]
    xi1 = [xi1_0.scale(_zeta_N(N, A * i)) for i in range(N)]
    for i in range(N):
        xi0[i].provenance = f"xi0^({i})"
        xi1[i].provenance = f"xi1^({i})"
    return {"xi0": xi0, "xi1": xi1}


@dataclass
class GeneratorImages:
    N: int
    A: int
    images: Dict[str, List[DImageVector]]
    routes_agree: bool
    xi0_sum_vanishes: bool
    difference_is_inhomogeneous: bool

    @property
    def passed(self) -> bool:
        return self.routes_agree and self.xi0_sum_vanishes and self.difference_is_inhomogeneous

    def all_images(self) -> List[DImageVector]:
        return self.images["xi0"] + self.images["xi1"]

    def to_dict(self) -> Dict[str, object]:
        return {
            "N": self.N,
            "A": self.A,
            "routes_agree": self.routes_agree,
            "xi0_sum_vanishes": self.xi0_sum_vanishes,
            "difference_is_inhomogeneous": self.difference_is_inhomogeneous,
            "images": [v.to_dict() for v in self.all_images()],
        }


@log_performance("rc_generator_images")
def rc_generator_images(N: int, A: int) -> GeneratorImages:
    """
    The 2N exact image vectors, derived twice.

    Args:
        N: cover degree
        A: branch exponent

    Returns:
        GeneratorImages with the direct images and the agreement flags
    """
    validate_pair(N, A)
    direct = {kind: [direct_image(kind, i, N, A) for i in range(N)] for kind in ("xi0", "xi1")}
    transported = transported_images(N, A)
    agree = all(
        d.same_as(t) for kind in direct for d, t in zip(direct[kind], transported[kind])
    )
    total = direct["xi0"][0]
    for v in direct["xi0"][1:]:
        total = total + v
    vanishes = total.first.is_zero() and total.second.is_zero()
    difference = (direct["xi1"][0] - direct["xi0"][0]).same_as(inhomogeneous_vector(N, A))
    result = GeneratorImages(N, A, direct, agree, vanishes, difference)
    logger.info(f"generator images N={N} A={A}: routes agree={agree}")
    return result


# Quotient ring and exact rank


def to_quotient_ring(functions: Sequence[KummerElem]) -> Tuple[List[Dict[Column, CycloNum]], int]:
    """
    Normal forms after multiplying every function by one common denominator.

    l_i becomes u_i^N; root exponents are already folded below N, so
    u1^a v1^b u2^c v2^d with b, d < N is the monomial basis.

    Returns:
        (rows, basis_size) with each row a sparse map column -> coefficient
    """
    if not functions:
        return [], 0
    N = functions[0].N
    order = 2 * N
    coeffs = [c for f in functions for c in f.terms.values()]
    common = common_denominator(coeffs)
    rows = []
    columns = set()
    for f in functions:
        if f.N != N:
            raise StructuralError("functions with different N cannot share a quotient ring")
        row: Dict[Column, CycloNum] = {}
        for (e0, e1, e2, e3), coeff in f.terms.items():
            cleared = Poly(coeff.num * common.exquo(coeff.den), order)
            for (p1, p2, px), value in cleared.terms().items():
                if px:
                    raise StructuralError("function depends on the fibre coordinate x")
                col = (N * p1 + e0, e1, N * p2 + e2, e3)
                row[col] = row[col] + value if col in row else value
        row = {c: v for c, v in row.items() if not v.is_zero()}
        columns.update(row)
        rows.append(row)
    return rows, len(columns)


def _reduce_row(row: Dict, pivots: Dict, sub, mul, is_zero) -> Tuple[Optional[Column], Dict]:
    while row:
        col = min(row)
        if col not in pivots:
            return col, row
        factor = row[col]
        for c, v in pivots[col].items():
            value = sub(row.get(c), mul(factor, v))
            if is_zero(value):
                row.pop(c, None)
            else:
                row[c] = value
    return None, row


def sparse_rank(rows: Sequence[Dict], inverse, sub, mul, is_zero) -> int:
    """Rank by sparse row echelon; pivot rows are normalized to leading coefficient 1."""
    pivots: Dict[Column, Dict] = {}
    for row in rows:
        col, reduced = _reduce_row(dict(row), pivots, sub, mul, is_zero)
        if col is None:
            continue
        lead_inv = inverse(reduced[col])
        pivots[col] = {c: mul(lead_inv, v) for c, v in reduced.items()}
    return len(pivots)


def _cyclo_sub(a, b):
    return -b if a is None else a - b


def _cyclo_rank(rows: Sequence[Dict[Column, CycloNum]]) -> int:
    return sparse_rank(
        rows,
        inverse=lambda a: a.inverse(),
        sub=_cyclo_sub,
        mul=lambda a, b: a * b,
        is_zero=lambda a: a.is_zero(),
    )


def rc_rank_exact(functions: Sequence[KummerElem]) -> Tuple[int, int]:
    """Exact rank over Q(zeta_2N) of Kummer functions; returns (rank, basis size)."""
    rows, basis = to_quotient_ring(functions)
    return _cyclo_rank(rows), basis


# Finite-field specialization


def _prime_for(order: int, floor: int) -> int:
    p = nextprime(floor)
    while (p - 1) % order:
        p = nextprime(p)
    return p


def _fermat_point(N: int, p: int, rng: random.Random) -> Tuple[int, int]:
    """(u, v) in F_p with u^N + v^N = 1 and u, v nonzero."""
    while True:
        u = rng.randrange(1, p)
        w = (1 - pow(u, N, p)) % p
        if w == 0:
            continue
        v = nthroot_mod(w, N, p)
        if v is not None and v % p:
            return u, v % p


def _cyclo_mod_p(c: CycloNum, zeta: int, p: int) -> Optional[int]:
    total = 0
    for k, q in enumerate(c.coeffs):
        if q:
            if q.denominator % p == 0:
                return None
            total += q.numerator * pow(q.denominator, -1, p) * pow(zeta, k, p)
    return total % p


def rc_rank_fast(functions: Sequence[KummerElem], points: int = 8, prime_floor: int = 10007,
                 seed: int = 0) -> Dict[str, object]:
    """
    Lower bound for the rank by evaluating the normal forms at random points
    of the Fermat curves over F_p, p = 1 mod 2N, with zeta_2N sent to an
    element of order 2N.

    A specialization never raises rank, so a full-rank specialization
    certifies the lower bound.
    """
    if not functions:
        return {"rank": 0, "prime": None, "points": 0}
    N = functions[0].N
    order = 2 * N
    rng = random.Random(seed)
    rows, _ = to_quotient_ring(functions)
    p = _prime_for(order, prime_floor)
    while True:
        zeta = pow(primitive_root(p), (p - 1) // order, p)
        reduced = []
        bad = False
        for row in rows:
            entries = {}
            for col, value in row.items():
                m = _cyclo_mod_p(value, zeta, p)
                if m is None:
                    bad = True
                    break
                entries[col] = m
            reduced.append(entries)
            if bad:
                break
        if not bad:
            break
        p = _prime_for(order, p)
    n_points = max(points, len(rows) + 4)
    samples = [(_fermat_point(N, p, rng), _fermat_point(N, p, rng)) for _ in range(n_points)]
    matrix = []
    for entries in reduced:
        values = {}
        for k, ((u1, v1), (u2, v2)) in enumerate(samples):
            total = 0
            for (a, b, c, d), m in entries.items():
                total += m * pow(u1, a, p) * pow(v1, b, p) * pow(u2, c, p) * pow(v2, d, p)
            if total % p:
                values[k] = total % p
        matrix.append(values)
    rank = sparse_rank(
        matrix,
        inverse=lambda a: pow(a, -1, p),
        sub=lambda a, b: ((0 if a is None else a) - b) % p,
        mul=lambda a, b: a * b % p,
        is_zero=lambda a: a % p == 0,
    )
    return {"rank": rank, "prime": p, "points": n_points, "seed": seed}


# Pole-locus matrix


def polelemma_matrix(N: int, A: int, columns: Optional[Sequence[Tuple[int, int]]] = None) -> List[Dict[int, CycloNum]]:
    """
    Rows (i, j) in (Z/N)^2, columns the monomials X^a Y^b evaluated at
    (X, Y) = (zeta_N^i, zeta_N^j).
    """
    if columns is None:
        columns = [
            (0, 0),
            (0, A),
            (N - 2 * A, 2 * A - N),
            (N - A, 2 * A - N),
            (N - A, 0),
            (N - 2 * A, A),
        ]
    order = 2 * N
    rows = []
    for i in range(N):
        for j in range(N):
            rows.append({k: CycloNum.zeta(order, 2 * (a * i + b * j)) for k, (a, b) in enumerate(columns)})
    return rows


def rc_polelemma(N: int, A: int, columns: Optional[Sequence[Tuple[int, int]]] = None) -> int:
    """Exact rank of the N^2 x 6 evaluation matrix; expected 6."""
    validate_pair(N, A)
    return _cyclo_rank(polelemma_matrix(N, A, columns))


# Span certificates


def _check_hypothesis(N: int, enforce_hypothesis: bool) -> None:
    if N == 2 and enforce_hypothesis:
        raise HypothesisError(
            "rank certificates assume N != 2; for N = 2 the diagonal span is only 3-dimensional"
        )


def delta_generators(N: int, A: int) -> List[DImageVector]:
    """Theta_h of the xi0 and xi1 images for h in (id, tau, tau')."""
    base = [direct_image("xi0", 0, N, A), direct_image("xi1", 0, N, A)]
    elements = [ga_identity(N, A), ga_tau(N, A), ga_tau_prime(N, A)]
    return [rc_theta_transport(h, vec) for h in elements for vec in base]


def coset_representatives(N: int, A: int) -> List[TildeG2Elem]:
    """(id, s) for s in S3, canonical lifts."""
    return [ga_element("id", label, N, A) for label in S3_LABELS]


def _certificate(name: str, N: int, A: int, generators: List[DImageVector],
                 fast_path: bool, fast_points: int, prime_floor: int, seed: int) -> SpanCertificate:
    functions = [g.first for g in generators]
    fast = None
    if fast_path:
        fast = rc_rank_fast(functions, fast_points, prime_floor, seed)
        logger.info(f"{name} fast path N={N} A={A}: rank >= {fast['rank']} mod {fast['prime']}")
    rank, basis = rc_rank_exact(functions)
    cert = SpanCertificate(name, N, A, generators, rank, basis, fast)
    if N % 2 == 0:
        cert.notes.append("rank computed over Q(zeta_2N); it bounds the rank over Q(zeta_N) from below")
    if fast is not None and fast["rank"] > rank:
        raise StructuralError(f"specialization rank {fast['rank']} exceeds exact rank {rank}")
    logger.info(f"{name} N={N} A={A}: rank {rank} of {len(functions)}, dim_Q {cert.dim_Q}")
    return cert


@log_performance("rc_rank_delta")
def rc_rank_delta(N: int, A: int, enforce_hypothesis: bool = True, fast_path: bool = False,
                  fast_points: int = 8, prime_floor: int = 10007, seed: int = 0) -> SpanCertificate:
    """
    Rank of the six diagonal-span generators' first components.

    Raises:
        HypothesisError: for N = 2 unless enforce_hypothesis is False
    """
    _check_hypothesis(N, enforce_hypothesis)
    validate_pair(N, A)
    return _certificate("rank_delta", N, A, delta_generators(N, A),
                        fast_path, fast_points, prime_floor, seed)


@log_performance("rc_rank_full")
def rc_rank_full(N: int, A: int, enforce_hypothesis: bool = True, fast_path: bool = False,
                 fast_points: int = 8, prime_floor: int = 10007, seed: int = 0) -> SpanCertificate:
    """
    Rank of the 36 transports of the diagonal-span generators by (id, s).

    Raises:
        HypothesisError: for N = 2 unless enforce_hypothesis is False
    """
    _check_hypothesis(N, enforce_hypothesis)
    validate_pair(N, A)
    generators = [
        rc_theta_transport(rep, vec)
        for rep in coset_representatives(N, A)
        for vec in delta_generators(N, A)
    ]
    return _certificate("rank_full", N, A, generators, fast_path, fast_points, prime_floor, seed)


def rc_scaling_invariance(N: int, A: int, seed: int = 0) -> bool:
    """Multiplying each generator by a root of unity leaves the rank unchanged."""
    rng = random.Random(seed)
    functions = [g.first for g in delta_generators(N, A)]
    scaled = [f.scale(RatFunc.zeta(2 * N, rng.randrange(2 * N))) for f in functions]
    return rc_rank_exact(functions)[0] == rc_rank_exact(scaled)[0]


def rc_monotonicity(N: int, A: int, full: Optional[SpanCertificate] = None,
                    delta: Optional[SpanCertificate] = None) -> Dict[str, object]:
    """rank_full >= rank_delta >= rank of the xi0, xi1 images (= 2)."""
    base = rc_rank_exact([direct_image(k, 0, N, A).first for k in ("xi0", "xi1")])[0]
    delta = delta or rc_rank_delta(N, A)
    full = full or rc_rank_full(N, A)
    return {
        "base": base,
        "delta": delta.rank,
        "full": full.rank,
        "passed": full.rank >= delta.rank >= base == 2,
    }
