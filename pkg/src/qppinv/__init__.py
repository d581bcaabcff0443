"""Quadratic inverses for quadratic permutation polynomials over Z_N."""

from .errors import (
    InvalidInputError,
    NoInverseError,
    NoQuadraticPPError,
    NoSolutionError,
    NotAPermutationError,
    QPPError,
    ResourceLimitError,
    VerificationError,
)
from .inverse import (
    ExistenceReport,
    InverseOutcome,
    exists_quadratic_inverse,
    exponent_profile,
    is_inverse_pair,
    is_self_inverse,
    partial_inverse,
    quadratic_inverse,
    quartic_vanishes,
)
from .modmath import (
    INF,
    CongruenceSolutions,
    Factorization,
    arithmetic_inverse,
    factorize,
    gcd,
    solve_linear_congruence,
    valuation,
)
from .polyring import (
    PermutationTable,
    PolynomialModN,
    QuadraticPP,
    compose,
    evaluate,
    invert_table,
    is_permutation_polynomial,
    normalize_shift,
    permutation_table,
    shift_inverse,
)

__version__ = "0.1.0"
