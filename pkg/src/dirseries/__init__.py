"""Dirichlet-series constructions, abscissa estimation, and diagonal kernels."""

from .abscissa import (
    AbscissaReport,
    DeltaReport,
    convergence_table,
    estimate_delta_a,
    estimate_sigma_a,
    estimate_sigma_a_smooth,
)
from .constructions import (
    RhoResult,
    construction_i_coeffs,
    construction_ii_coeffs,
    find_rho,
    g_coeffs,
    g_truncated_eval,
    kalmar_dm_coeffs,
    ordered_factorizations_bruteforce,
    rho_m,
    rho_sequence,
    rho_smooth,
)
from .errors import (
    DirSeriesError,
    NoRootError,
    SeriesParseError,
    SingularInputError,
)
from .kernel import (
    GramResult,
    KernelSpec,
    gram_matrix,
    halfplane_constants,
    kappa,
    membership_ratio,
)
from .primes import (
    PrimeTable,
    factorize,
    first_n_primes,
    gpf,
    radical,
    sieve_primes,
    smooth_numbers,
)
from .series import (
    CoefficientSequence,
    EvalResult,
    dirichlet_convolve,
    drop_unit,
    euler_product_construction_ii,
    euler_product_zeta_n,
    evaluate,
    evaluate_smooth,
    multiplicative_extend,
    ones,
    power_shift,
    reciprocal_coeffs,
    unit,
    zeta_real,
)
from .specparse import SeriesNode, build_sequence, parse_series_spec

__version__ = "0.1.0"
