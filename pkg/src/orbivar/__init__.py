"""Exact invariants of weighted homogeneous polynomials with diagonal symmetries.

Exponents, E-functions, Hodge numbers, Milnor numbers and the spectral
variance of Landau-Ginzburg orbifolds (f, G), computed with rationals and
cyclotomic numbers only.
"""

from .cusp import build_cusp, cusp_chi, cusp_exponents, cusp_mu, cusp_variance, verify_cusp
from .cyclotomic import CyclotomicNumber, RootOfUnity, as_rational, cyclotomic_polynomial, embed_root
from .dedekind import cot_square_sum, generalized_dedekind_sum, sawtooth, subgroup_cot_sum
from .groups import DiagonalGroup, GroupElement, enumerate_group, fixed_subgroup, sector_counts
from .orbifold import (
    e_function,
    exponents,
    hodge_table,
    mean,
    mu_inclusion_exclusion,
    mu_pair,
    variance,
    verify_main_theorem,
)
from .polynomial import (
    ExponentMultiset,
    WeightSystem,
    brieskorn_pham,
    c_hat,
    exponents_trivial,
    infer_weights,
    milnor_number_trivial,
    parse_polynomial,
)
from .qseries import FracLaurent1, FracLaurent2, TruncatedSeries, finite_part_check

__version__ = "0.1.0"

__all__ = [
    "CyclotomicNumber", "RootOfUnity", "as_rational", "cyclotomic_polynomial", "embed_root",
    "FracLaurent1", "FracLaurent2", "TruncatedSeries", "finite_part_check",
    "DiagonalGroup", "GroupElement", "enumerate_group", "fixed_subgroup", "sector_counts",
    "ExponentMultiset", "WeightSystem", "brieskorn_pham", "c_hat", "exponents_trivial",
    "infer_weights", "milnor_number_trivial", "parse_polynomial",
    "e_function", "exponents", "hodge_table", "mean", "mu_inclusion_exclusion", "mu_pair",
    "variance", "verify_main_theorem",
    "sawtooth", "cot_square_sum", "generalized_dedekind_sum", "subgroup_cot_sum",
    "build_cusp", "cusp_chi", "cusp_exponents", "cusp_mu", "cusp_variance", "verify_cusp",
]
