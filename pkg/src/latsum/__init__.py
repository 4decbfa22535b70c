"""Summation and analytic continuation of divergent lattice series.

The engines assign values to series ``sum f(n) z^n`` over ``Z^k`` whose terms
grow polynomially: t-sums (``z != 1``) via finite differences, h-sums
(``z = 1``, ``f`` homogeneous) via root-of-unity averaging, plus Fourier
duals, the Poisson identity for the two-variable series, continuation of
``sum P(n)^-s`` for inhomogeneous ``P`` and Dirichlet L-functions.
"""

from .dirichlet import DirichletCharacter, character, character_from_values, enumerate_characters, gauss_sum, l_function
from .errors import (ConditioningError, DomainError, ExcludedParameter, LatsumError, NotExtendable, NotHSummable,
                     NotPositiveDefinite, NotSupported, NotTSummable, OracleFailure, ParseError, PoleDetected,
                     PoleError, PoleParameter, TruncationBudgetExceeded, UnsupportedError)
from .families import (HomogeneousFamily, LinearCombination, PowerFamily, TaylorPiece, diagonal_even_power,
                       one_dim_power, parse_complex, parse_family, polynomial_family, quadratic_power,
                       rational_homogeneous, signed_one_dim_power)
from .fourier import FourierPair, fourier_transform, is_admissible, mollified_transform_oracle, radial_constant
from .hsum import h_sum, h_sum_polynomial, h_sum_translated, is_h_summable
from .lerch import extrapolate_to_origin, freg, functional_equation_check, lerch_F, psi
from .polynomials import SparsePolynomial, is_positive_definite, parse_polynomial
from .scalar import TorusPoint, root_of_unity, torus_from_reals
from .special import SpecialProblem, compute_exclusion_set, special_G, special_G_limit
from .tsum import SumResult, t_sum, t_sum_periodic, t_sum_sequence

__version__ = "0.1.0"

__all__ = [
    "DirichletCharacter",
    "character",
    "character_from_values",
    "enumerate_characters",
    "gauss_sum",
    "l_function",
    "ConditioningError",
    "DomainError",
    "ExcludedParameter",
    "LatsumError",
    "NotExtendable",
    "NotHSummable",
    "NotPositiveDefinite",
    "NotSupported",
    "NotTSummable",
    "OracleFailure",
    "ParseError",
    "PoleDetected",
    "PoleError",
    "PoleParameter",
    "TruncationBudgetExceeded",
    "UnsupportedError",
    "HomogeneousFamily",
    "LinearCombination",
    "PowerFamily",
    "TaylorPiece",
    "diagonal_even_power",
    "one_dim_power",
    "parse_complex",
    "parse_family",
    "polynomial_family",
    "quadratic_power",
    "rational_homogeneous",
    "signed_one_dim_power",
    "FourierPair",
    "fourier_transform",
    "is_admissible",
    "mollified_transform_oracle",
    "radial_constant",
    "h_sum",
    "h_sum_polynomial",
    "h_sum_translated",
    "is_h_summable",
    "extrapolate_to_origin",
    "freg",
    "functional_equation_check",
    "lerch_F",
    "psi",
    "SparsePolynomial",
    "is_positive_definite",
    "parse_polynomial",
    "TorusPoint",
    "root_of_unity",
    "torus_from_reals",
    "SpecialProblem",
    "compute_exclusion_set",
    "special_G",
    "special_G_limit",
    "SumResult",
    "t_sum",
    "t_sum_periodic",
    "t_sum_sequence",
]
