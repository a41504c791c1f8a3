"""
Exact algebra: the cyclotomic field, rational functions over it, and the
root algebras that carry every fractional-power function.
"""

from src.algebra.cyclo import CycloNum, cyclo_arith, cyclo_inv, embed_complex
from src.algebra.ratfunc import (
    Poly,
    RatFunc,
    rf_arith,
    rf_derive,
    rf_substitute,
    rf_eval_exact,
    rf_eval_numeric,
    rf_degree,
)
from src.algebra.kummer import (
    RadicalElem,
    KummerElem,
    XKummerElem,
    km_mul,
    km_derive,
    km_eval,
)

__all__ = [
    "CycloNum",
    "cyclo_arith",
    "cyclo_inv",
    "embed_complex",
    "Poly",
    "RatFunc",
    "rf_arith",
    "rf_derive",
    "rf_substitute",
    "rf_eval_exact",
    "rf_eval_numeric",
    "rf_degree",
    "RadicalElem",
    "KummerElem",
    "XKummerElem",
    "km_mul",
    "km_derive",
    "km_eval",
]
