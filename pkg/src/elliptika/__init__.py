"""Jacobi theta / elliptic function library with an identity-verification CLI."""

from .elliptic import (
    CS,
    DS,
    EVAL_METHODS,
    FUNCTION_INDICES,
    NS,
    EllipticContext,
    ParityIndex,
    context_from_tau,
    f_ij,
    f_ij_derivative,
    jacobi_basic,
    lattice_distance,
    reduce_to_cell,
    trig_degeneration,
    weierstrass_p,
    weierstrass_p_derivative,
)
from .errors import (
    ConfigError,
    DomainError,
    EllipticaError,
    NotAdmissible,
    ParityViolation,
    ParseError,
    PoleProximity,
    RadiusTooLarge,
    TruncationNotConverged,
    UnsupportedOrder,
)
from .identities import (
    FAMILIES,
    CoprimePair,
    IdentityCase,
    VerificationReport,
    classical_case_for,
    classical_lhs,
    classical_reciprocity_constant,
    classical_reciprocity_lhs,
    classical_rhs,
    degeneration_check,
    phi_limit,
    phi_sum,
    psi_limit,
    psi_sum,
    reciprocity_constants,
    reciprocity_lhs,
    reciprocity_rhs,
    sample_points,
    verify_classical,
    verify_derivative_reciprocity,
    verify_function_equation,
    verify_reciprocity,
)
from .laurent import (
    ContourConfig,
    LaurentCoefficient,
    closed_form_lambda_poly,
    f_nth_derivative,
    laurent_C,
    laurent_C_auto,
    series_coefficient,
)
from .report import SuiteConfig, SuiteResult, run_suite, to_csv, to_json
from .theta import (
    SeriesTruncation,
    TauParameter,
    ThetaValue,
    exponential_e,
    theta,
    theta_eval,
    theta_mumford,
    theta_product,
)

__version__ = "0.1.0"
