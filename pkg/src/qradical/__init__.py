"""Exact q-difference polynomial calculus over the Gaussian rationals.

The public surface re-exported here covers the field, polynomials, the
Jackson operator, q-chains and radicals, q-Casorati determinants and the
theorem verifiers.  See ``qradical.cli`` for the command line tool.
"""

from .casorati import CasoratiInput, IndependenceReport, casorati, casorati_shift_form, independence_report
from .field import GaussianRational, Rational, arith, canonical_cmp, format_gaussian, gr, norm, parse_gaussian
from .parser import ParseError, parse_poly
from .poly import (
    DensePoly,
    DoesNotSplitError,
    FactoredPoly,
    dense_ops,
    divrem,
    euclid_gcd,
    evaluate,
    expand,
    extract_rational_roots,
    format_poly,
    scale_arg,
)
from .qcore import (
    InadmissibleQError,
    QContext,
    derivative_from_shifts,
    jackson,
    jackson_iter,
    q_binomial,
    q_factorial,
    q_number,
    q_pow_factor,
    shift_from_derivatives,
)
from .radical import (
    ChainDecomposition,
    QChain,
    chain_decompose,
    classical_rad,
    common_q_divisors,
    gcd_tower,
    q_weight,
    q_weight_at_value,
    rad_q,
    rad_q_trunc,
    relatively_q_prime,
)
from .theorems import (
    fermat_search,
    q_fermat_power,
    verify_fermat_instance,
    verify_fermat_multi_bound,
    verify_mason_classical,
    verify_mason_extended,
    verify_mason_q,
)

__version__ = "0.1.0"

__all__ = [
    "casorati",
    "CasoratiInput",
    "IndependenceReport",
    "casorati_shift_form",
    "independence_report",
    "GaussianRational",
    "Rational",
    "arith",
    "canonical_cmp",
    "format_gaussian",
    "gr",
    "norm",
    "parse_gaussian",
    "ParseError",
    "parse_poly",
    "DensePoly",
    "DoesNotSplitError",
    "FactoredPoly",
    "dense_ops",
    "divrem",
    "euclid_gcd",
    "evaluate",
    "expand",
    "extract_rational_roots",
    "format_poly",
    "scale_arg",
    "InadmissibleQError",
    "QContext",
    "derivative_from_shifts",
    "jackson",
    "jackson_iter",
    "q_binomial",
    "q_factorial",
    "q_number",
    "q_pow_factor",
    "shift_from_derivatives",
    "ChainDecomposition",
    "QChain",
    "chain_decompose",
    "classical_rad",
    "common_q_divisors",
    "gcd_tower",
    "q_weight",
    "q_weight_at_value",
    "rad_q",
    "rad_q_trunc",
    "relatively_q_prime",
    "fermat_search",
    "q_fermat_power",
    "verify_fermat_instance",
    "verify_fermat_multi_bound",
    "verify_mason_classical",
    "verify_mason_extended",
    "verify_mason_q",
]
