"""
Cycle Families

The families xi0^(i), xi1^(i) as curve data: each is a pair of components
(curve, rational function in the local fibre coordinate v), and the
closedness condition says the divisors of the component functions cancel
as zero-cycles on the surface.

Curves are modelled by coordinate data only:
    Z     the diagonal x = y, parametrized by v with
          v^N (1 - l1 z) = 1 - l2 z, z = (1 - v^N)/(l2 - l1 v^N)
    Q00   exceptional curve above (x, y) = (0, 0), coordinate v
    Q11   exceptional curve above (1, 1), coordinate v
    Q10   exceptional curve above (1, 0), coordinate v

Surface points are keyed by (x, y, v) with v an exact Kummer unit.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from src.algebra.cyclo import CycloNum
from src.algebra.kummer import KummerElem
from src.algebra.ratfunc import RatFunc
from src.backend.group_action import TildeG2Elem, ga_kernel_element, ga_substitute, v_multiplier
from src.backend.params import validate_pair
from src.utils.error_handler import StructuralError
from src.utils.logger import get_logger

logger = get_logger(__name__)

CURVE_IDS = ("Z", "Q00", "Q11", "Q10")
FAMILY_KINDS = ("xi0", "xi1")

_EXCEPTIONAL_BASE = {"Q00": (0, 0), "Q11": (1, 1), "Q10": (1, 0)}


@dataclass(frozen=True)
class SurfacePoint:
    """
    (x, y, v) on the local chart; v is None for the point at infinity of
    the named curve.
    """

    x: RatFunc
    y: RatFunc
    v: Optional[KummerElem]
    curve: Optional[str] = None

    def __str__(self):
        if self.v is None:
            return f"{self.curve}:v=inf"
        return f"(x={self.x}, y={self.y}, v={self.v})"


@dataclass(frozen=True)
class CurveModel:
    id: str
    N: int
    A: int

    def __post_init__(self):
        if self.id not in CURVE_IDS:
            raise StructuralError(f"unknown curve {self.id!r}; expected one of {CURVE_IDS}")

    def z_of(self, v: KummerElem) -> RatFunc:
        """z = (1 - v^N)/(l2 - l1 v^N) on Z."""
        order = 2 * self.N
        t = (v ** self.N).scalar_value()
        l1 = RatFunc.var("l1", order)
        l2 = RatFunc.var("l2", order)
        return (1 - t) / (l2 - l1 * t)

    def point(self, v: Optional[KummerElem]) -> SurfacePoint:
        order = 2 * self.N
        if v is None:
            zero = RatFunc.const(0, order)
            return SurfacePoint(zero, zero, None, self.id)
        if self.id == "Z":
            z = self.z_of(v)
            return SurfacePoint(z, z, v)
        bx, by = _EXCEPTIONAL_BASE[self.id]
        return SurfacePoint(RatFunc.const(bx, order), RatFunc.const(by, order), v)

    def __str__(self):
        return self.id


def z_parametrization_holds(N: int) -> bool:
    """
    v^N (1 - l1 z) - (1 - l2 z) vanishes identically for z = (1 - t)/(l2 - l1 t),
    t = v^N; checked as a rational function of t.
    """
    order = 2 * N
    t = RatFunc.var("x", order)
    l1 = RatFunc.var("l1", order)
    l2 = RatFunc.var("l2", order)
    z = (1 - t) / (l2 - l1 * t)
    return (t * (1 - l1 * z) - (1 - l2 * z)).is_zero()


@dataclass(frozen=True)
class CurveFunction:
    """prod (v - root)^mult with Kummer-unit roots; the empty product is 1."""

    factors: Tuple[Tuple[KummerElem, int], ...]

    @classmethod
    def ratio(cls, zero: KummerElem, pole: KummerElem) -> "CurveFunction":
        return cls.from_dict({zero: 1, pole: -1})

    @classmethod
    def from_dict(cls, factors: Dict[KummerElem, int]) -> "CurveFunction":
        merged: Dict[KummerElem, int] = {}
        for root, mult in factors.items():
            merged[root] = merged.get(root, 0) + mult
        items = tuple(sorted(((r, m) for r, m in merged.items() if m), key=lambda item: str(item[0])))
        return cls(items)

    def as_dict(self) -> Dict[KummerElem, int]:
        return dict(self.factors)

    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def is_constant(self) -> bool:
        return not self.factors

    def inverse(self) -> "CurveFunction":
        return CurveFunction.from_dict({r: -m for r, m in self.factors})

    def __mul__(self, other: "CurveFunction") -> "CurveFunction":
        merged = self.as_dict()
        for root, mult in other.factors:
            merged[root] = merged.get(root, 0) + mult
        return CurveFunction.from_dict(merged)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for root, mult in self.factors:
            base = f"(v - {root})"
            parts.append(base if mult == 1 else f"{base}^{mult}")
        return " * ".join(parts)


@dataclass
class ZeroCycle:
    """Formal sum of surface points with nonzero integer multiplicities."""

    points: Dict[SurfacePoint, int] = field(default_factory=dict)

    def add(self, point: SurfacePoint, mult: int) -> None:
        total = self.points.get(point, 0) + mult
        if total:
            self.points[point] = total
        else:
            self.points.pop(point, None)

    def __add__(self, other: "ZeroCycle") -> "ZeroCycle":
        out = ZeroCycle(dict(self.points))
        for point, mult in other.points.items():
            out.add(point, mult)
        return out

    def is_zero(self) -> bool:
        return not self.points

    def degree(self) -> int:
        return sum(self.points.values())

    def __iter__(self) -> Iterator[Tuple[SurfacePoint, int]]:
        return iter(self.points.items())

    def to_dict(self) -> Dict[str, int]:
        return {str(p): m for p, m in self.points.items()}


@dataclass(frozen=True)
class CycleFamily:
    kind: str
    i: int
    N: int
    A: int
    components: Tuple[Tuple[CurveModel, CurveFunction], ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "i": self.i,
            "N": self.N,
            "A": self.A,
            "components": [{"curve": c.id, "function": str(f)} for c, f in self.components],
        }


def zeta_unit(N: int, A: int, k: int) -> KummerElem:
    """zeta_N^k as a Kummer scalar."""
    return KummerElem.scalar(CycloNum.zeta(2 * N, 2 * k), N, A)


def v21(N: int, A: int) -> KummerElem:
    """(1-l2)^(1/N) / (1-l1)^(1/N) = v2 v1^(N-1) / (1 - l1)."""
    return KummerElem.monomial((0, -1, 0, 1), N, A)


def _base_points(kind: str, i: int, N: int, A: int) -> Tuple[KummerElem, KummerElem]:
    """(zeta^(i+1) c, zeta^i c) with c = 1 for xi0 and c = v21 for xi1."""
    c = KummerElem.one(N, A) if kind == "xi0" else v21(N, A)
    return zeta_unit(N, A, i + 1) * c, zeta_unit(N, A, i) * c


def cy_build(kind: str, i: int, N: int, A: int, corrupt: bool = False) -> CycleFamily:
    """
    The family xi0^(i) or xi1^(i).

    Args:
        kind: "xi0" or "xi1"
        i: index mod N
        N: cover degree
        A: branch exponent
        corrupt: invert the exceptional-curve function (negative control)

    Returns:
        CycleFamily with the Z component first
    """
    validate_pair(N, A)
    if kind not in FAMILY_KINDS:
        raise StructuralError(f"unknown family {kind!r}; expected one of {FAMILY_KINDS}")
    i %= N
    nxt, cur = _base_points(kind, i, N, A)
    psi = CurveFunction.ratio(nxt, cur)
    phi = CurveFunction.ratio(cur, nxt)
    if corrupt:
        phi = phi.inverse()
    exceptional = "Q00" if kind == "xi0" else "Q11"
    return CycleFamily(
        kind, i, N, A,
        ((CurveModel("Z", N, A), psi), (CurveModel(exceptional, N, A), phi)),
    )


def cy_divisor(f: CurveFunction, C: CurveModel) -> ZeroCycle:
    """
    Zeros minus poles of f on C as exact surface points.

    The point at infinity of C carries the multiplicity -deg(f) when the
    degrees are unbalanced.
    """
    cycle = ZeroCycle()
    if f.is_constant():
        logger.warning(f"constant function on {C}; divisor is empty")
        return cycle
    for root, mult in f.factors:
        cycle.add(C.point(root), mult)
    if f.degree():
        cycle.add(C.point(None), -f.degree())
    return cycle


def cy_total_divisor(family: CycleFamily) -> ZeroCycle:
    total = ZeroCycle()
    for curve, fn in family.components:
        total = total + cy_divisor(fn, curve)
    return total


def cy_verify_closed(family: CycleFamily) -> bool:
    """The component divisors cancel exactly."""
    total = cy_total_divisor(family)
    if not total.is_zero():
        logger.debug(f"{family.kind}^({family.i}) not closed: {total.to_dict()}")
        return False
    return True


def cy_transport(family: CycleFamily, g: TildeG2Elem) -> CycleFamily:
    """
    Pull back the component functions by a kernel element g.

    With g^#(v) = mu v, the factor v - r becomes mu (v - g^#(r)/mu); the
    unit mu^deg cancels because every component has degree 0.
    """
    if g.rho1.base != "id" or g.rho2.base != "id":
        raise StructuralError("cycle transport is only defined for kernel elements")
    mu_inv = v_multiplier(g).inverse()
    components = []
    for curve, fn in family.components:
        moved = {ga_substitute(g, root) * mu_inv: mult for root, mult in fn.factors}
        components.append((curve, CurveFunction.from_dict(moved)))
    return CycleFamily(family.kind, family.i, family.N, family.A, tuple(components))


def rho_power(N: int, A: int, i: int) -> TildeG2Elem:
    """The kernel element moving (1-l1)^(1/N) by zeta_N^i."""
    return ga_kernel_element(N, A, j1=2 * i)


def same_data(f: CycleFamily, g: CycleFamily) -> bool:
    return f.components == g.components


def cy_transport_consistency(N: int, A: int) -> Dict[str, bool]:
    """rho^i moves xi0^(0) to xi0^(i) and fixes xi1^(0), for every i."""
    xi0 = cy_build("xi0", 0, N, A)
    xi1 = cy_build("xi1", 0, N, A)
    moves, fixes = True, True
    for i in range(N):
        rho = rho_power(N, A, i)
        moves = moves and same_data(cy_transport(xi0, rho), cy_build("xi0", i, N, A))
        fixes = fixes and same_data(cy_transport(xi1, rho), xi1)
    return {"xi0_moves": moves, "xi1_fixed": fixes}


def cy_product_telescopes(N: int, A: int, kind: str = "xi0") -> bool:
    """prod over i of the Z-component functions is identically 1."""
    product = CurveFunction.from_dict({})
    for i in range(N):
        product = product * cy_build(kind, i, N, A).components[0][1]
    return product.is_constant()


def cy_all_families(N: int, A: int) -> List[CycleFamily]:
    return [cy_build(kind, i, N, A) for kind in FAMILY_KINDS for i in range(N)]
