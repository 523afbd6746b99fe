"""Exact computations around the tail order on moment sequences.

Measures with positive compact support, their moments and CDFs in exact
rational arithmetic; tail-order comparison with certificates; executable
counterexample constructions (vanishing-moment kernels, matched-moment and
alternating pairs, alternating-CDF pairs); harmonic set algebra over the
naturals; and lexicographic distribution-valued games with certified
equilibrium analysis.
"""

__version__ = "0.1.0"

import sys as _sys

# exact rationals here routinely exceed CPython's default 4300-digit
# int-to-str conversion guard (deep moment scans record their constants)
if hasattr(_sys, "set_int_max_str_digits"):
    _sys.set_int_max_str_digits(2_000_000)

from .config import DEFAULT, Settings
from .measures import (
    DiscreteFinite,
    DiscreteRule,
    MomentValue,
    PiecewisePolyDensity,
    PrecisionExceeded,
    alternating_cdf_f_measure,
    alternating_cdf_g_measure,
    carleman_partial_sum,
    cdf,
    delta,
    measure_from_json,
    measure_to_json,
    moment,
    moment_table,
    piecewise_combine,
    piecewise_equal,
    total_mass,
    uniform_density,
)
from .tailorder import (
    TailVerdict,
    certify_cdf_dominance,
    certify_eventual_positive,
    compare_empirical,
    decide_piecewise,
    moment_difference_signs,
    verify_rightmost_difference,
)
from .constructions import (
    AlternatingPair,
    BumpSpec,
    ConstructionFailure,
    MatchedMomentPair,
    StagedKernel,
    VanishingKernel,
    ac_alternating_cdf_pair,
    alternating_pair,
    discrete_alternating_cdf_pair,
    matched_moment_pair,
    mixed_incomparable_demo,
    run_padded_alternating,
    staged_vanishing_kernel,
    unimodal_alternating_pair,
    vanishing_moment_kernel,
)
from .filters import (
    CertifiedInfiniteSet,
    StructuredSet,
    UnsupportedSetOperation,
    has_fip,
    in_frechet,
    in_msz_filter,
    is_msz_sequence,
    parse_set,
    theta_measure,
)
from .games import (
    DistGame,
    EquilibriumReport,
    MixedProfile,
    analyze_existence,
    check_lex_equilibrium,
    expected_payoff,
    lex_best_response,
    lex_compare,
    project,
    solve_zero_sum,
    verify_report,
    zero_sum_cycle_demo_game,
)
