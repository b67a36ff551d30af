"""Exact isotropy solver for quaternary quadratic forms over GF(2^k)(t),
with quaternion-algebra applications.

Everything is computed over exact field arithmetic; randomized searches
take an explicit random.Random and are reproducible from the seed.
"""

from .artin_schreier import (
    BinaryNormForm,
    WpShift,
    minimize,
    minimize_param,
    symbol,
    wp_solve_rational,
)
from .binary_norm import BudgetExhausted, NormEquation, solve_binary
from .factor import crt, factor, is_irreducible, is_squarefree
from .fields import GF
from .localsolve import (
    Congruence,
    InfiniteCondition,
    NotLiftable,
    ValuationParity,
    common_value_inf,
    common_value_odd,
    common_value_pole,
    hensel_lift,
    norm_form_represents,
)
from .parsing import ParseError, parse_place, parse_poly, parse_ratfunc
from .poly import Poly
from .quaternary import (
    AnisotropyCertificate,
    CommonValue,
    DegenerateForm,
    EarlyZero,
    IrreducibleSearchSpec,
    QuaternaryForm,
    SolveReport,
    canonicalize,
    find_common_value,
    find_irreducible_in_class,
    normalize_coefficients,
    solve_quaternary,
    solve_quaternary_report,
)
from .quaternion import (
    EmbeddingImpossible,
    Quaternion,
    QuaternionAlgebra,
    construct_ramified,
    embed_subfield,
    is_split,
    quat_mul,
    ramified_places,
    split_algebra,
)
from .ratfunc import Place, RatFunc

__all__ = [
    "AnisotropyCertificate",
    "BinaryNormForm",
    "BudgetExhausted",
    "CommonValue",
    "Congruence",
    "DegenerateForm",
    "EarlyZero",
    "EmbeddingImpossible",
    "GF",
    "InfiniteCondition",
    "IrreducibleSearchSpec",
    "NormEquation",
    "NotLiftable",
    "ParseError",
    "Place",
    "Poly",
    "Quaternion",
    "QuaternionAlgebra",
    "QuaternaryForm",
    "RatFunc",
    "SolveReport",
    "ValuationParity",
    "WpShift",
    "canonicalize",
    "common_value_inf",
    "common_value_odd",
    "common_value_pole",
    "construct_ramified",
    "crt",
    "embed_subfield",
    "factor",
    "find_common_value",
    "find_irreducible_in_class",
    "hensel_lift",
    "is_irreducible",
    "is_split",
    "is_squarefree",
    "minimize",
    "minimize_param",
    "normalize_coefficients",
    "norm_form_represents",
    "parse_place",
    "parse_poly",
    "parse_ratfunc",
    "quat_mul",
    "ramified_places",
    "solve_binary",
    "solve_quaternary",
    "solve_quaternary_report",
    "split_algebra",
    "symbol",
    "wp_solve_rational",
]
