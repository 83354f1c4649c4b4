"""Fourier coefficients of Klingen-type Eisenstein series in degree two.

The package computes, exactly where possible and with error-tracked
numerics otherwise, the Fourier coefficients of the rank-stratified
partial series of Klingen Eisenstein series, and from them the
components of Fourier-Jacobi coefficients in the Klingen-type
decomposition of Jacobi-form spaces.

Modules
-------
``exactarith``
    Exact rational arithmetic: Bernoulli numbers, special zeta values,
    divisor sums, Kronecker symbols, Cohen's H function.
``matrices``
    Half-integral and symplectic matrix algebra, rank strata, coset
    enumeration and desk-scale verification of representative systems.
``qseries``
    Exact q-expansions: Eisenstein series, the discriminant cusp form,
    level-one Hecke eigenforms and their multiplicativity checks.
``lvalues``
    Error-tracked evaluation of the special L-values and Gamma-factor
    constants entering the coefficient formula.
``eisenstein``
    Exact Fourier coefficients of the degree-1 and degree-2 Siegel
    Eisenstein series.
``partialfourier``
    The main coefficient formula for the stratified partial series and
    the component coefficients of Fourier-Jacobi expansions.
``jacobiforms``
    Jacobi-form expansions in degree (1, 1): extraction windows,
    cuspidality and proportionality testing.
``oracle``
    Independent numerical oracles: brute-force class numbers, direct
    evaluation of the degree-2 series, numerical Fourier inversion and
    bounded exhaustive matrix searches.
``verify``
    One-shot acceptance suites wired to the command line front end.
"""

from .eisenstein import a1, a2, a_coeff
from .exactarith import (
    bernoulli,
    cohen_H,
    dirichlet_L_neg,
    divisors,
    fundamental_decomposition,
    gen_bernoulli,
    kronecker,
    moebius,
    sigma,
    zeta_neg,
)
from .jacobiforms import (
    JacobiExpansion,
    ProportionalityReport,
    cusp_reference_weight12,
    extract_fj,
    fj_support,
    is_cuspidal,
    jacobi_eisenstein_index1,
    proportionality_check,
)
from .lvalues import (
    A_const,
    ErrReal,
    PrecisionBudgetError,
    beta_const,
    kappa,
    kappa_exact_interval,
    std_L,
    sym_square_L,
    working_prec,
    zeta_even,
)
from .matrices import (
    CosetSearch,
    HalfIntSym,
    RepSystemReport,
    RepTriple,
    StrataParams,
    SymplecticInt,
    bruteforce_cosets,
    enumerate_reps,
    gamma_prime_rank,
    gl2_reduce,
    gram_transform,
    is_in_jacobi,
    is_in_parabolic,
    outer_classes,
    parabolic_reduce,
    random_parabolic,
    random_symplectic,
    strata_t,
    strata_v,
    symplectic_from_last_row,
    verify_rep_system,
)
from .partialfourier import (
    BudgetNotMetError,
    FJComponentKey,
    KappaRef,
    StrataCoeff,
    fc_E,
    fc_H,
    fc_H1_deg2,
    fj_component_coeff,
)
from .qseries import (
    HeckeReport,
    QSeries,
    check_hecke_multiplicativity,
    delta_qexp,
    eigen_coefficient_fn,
    eigenform,
    eisenstein_qexp,
)
from .oracle import (
    ResourceCapError,
    SiegelPoint,
    bounded_matrix_search,
    fourier_invert,
    fourier_side_eval,
    hurwitz_bruteforce,
    siegel_eval,
    siegel_tail_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "A_const",
    "BudgetNotMetError",
    "CosetSearch",
    "ErrReal",
    "FJComponentKey",
    "HalfIntSym",
    "HeckeReport",
    "JacobiExpansion",
    "KappaRef",
    "PrecisionBudgetError",
    "ProportionalityReport",
    "QSeries",
    "RepSystemReport",
    "RepTriple",
    "ResourceCapError",
    "SiegelPoint",
    "StrataCoeff",
    "StrataParams",
    "SymplecticInt",
    "a1",
    "a2",
    "a_coeff",
    "bernoulli",
    "beta_const",
    "bounded_matrix_search",
    "bruteforce_cosets",
    "check_hecke_multiplicativity",
    "cohen_H",
    "cusp_reference_weight12",
    "delta_qexp",
    "dirichlet_L_neg",
    "divisors",
    "eigen_coefficient_fn",
    "eigenform",
    "eisenstein_qexp",
    "enumerate_reps",
    "extract_fj",
    "fc_E",
    "fc_H",
    "fc_H1_deg2",
    "fj_component_coeff",
    "fj_support",
    "fourier_invert",
    "fourier_side_eval",
    "fundamental_decomposition",
    "gamma_prime_rank",
    "gen_bernoulli",
    "gl2_reduce",
    "gram_transform",
    "hurwitz_bruteforce",
    "is_cuspidal",
    "is_in_jacobi",
    "is_in_parabolic",
    "jacobi_eisenstein_index1",
    "kappa",
    "kappa_exact_interval",
    "kronecker",
    "moebius",
    "outer_classes",
    "parabolic_reduce",
    "proportionality_check",
    "random_parabolic",
    "random_symplectic",
    "sigma",
    "siegel_eval",
    "siegel_tail_estimate",
    "std_L",
    "strata_t",
    "strata_v",
    "sym_square_L",
    "symplectic_from_last_row",
    "verify_rep_system",
    "working_prec",
    "zeta_even",
    "zeta_neg",
]
