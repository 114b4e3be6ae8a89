"""Dedekind-sum spectra, prime-race bias constants, sawtooth correlation
integrals, their moments and limiting distributions, and the totient
summatory error term, each computed by independent routes where one exists.
"""

__version__ = "0.1.0"

from .bias import Pattern, CkVector, c1_pattern, c2_pair, c2_pattern, ck_all, ck_point
from .characters import (
    CharacterTable,
    PrimeContext,
    build_context,
    build_table,
    char_value,
    gauss_sum,
    is_prime,
    l_one_series,
)
from .correlations import (
    CorrelationKey,
    b_exact,
    b_lattice_estimate,
    discrete_correlation,
    reduce_correlation,
)
from .dedekind import (
    Spectrum,
    dedekind_sum,
    dedekind_sum_pair,
    dedekind_values,
    spectrum_all,
    spectrum_point_characters,
    spectrum_point_truncated,
)
from .distribution import (
    EmpiricalDistribution,
    almost_period_stat,
    ecdf_scaled,
    extreme_report,
    extremes,
    from_ck_vector,
    from_spectrum,
    make_distribution,
    symmetry_statistic,
    tail_frequency,
)
from .errors import ResourceLimitError, SawspecError
from .foundations import (
    SieveTables,
    build_sieves,
    coeff_a,
    coeff_b,
    constant_C,
    mod_inverse,
    psi,
    psi_smoothed,
)
from .moments import (
    MomentEstimate,
    char_function_estimate,
    continuous_model_eval,
    continuous_model_moment_exact,
    empirical_moments,
    moment_tuple_sum_exact,
    theoretical_moment,
)
from .phi_error import (
    PhiAccumulator,
    build_phi_accumulator,
    pair_correlation_stat,
    r_values,
    rtilde_moment_exact,
    rtilde_samples,
    rtilde_truncated_model,
)
from .primes import (
    PatternCensus,
    conjecture_report,
    log_integral,
    pattern_census,
    prime_array,
)
