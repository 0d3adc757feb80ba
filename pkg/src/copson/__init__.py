"""Numerical tools for the reversed Copson inequality with 0 < p < 1.

The inequality studied is::

    sum_n ( (1/Lambda_n) sum_{k>=n} lambda_k x_k )^p >= (p/(L-p))^p sum_n x_n^p

for a positive weight sequence ``lambda`` with partial sums ``Lambda``.
"""

__version__ = "0.1.0"

from .weights import WeightFamily, parse_family, weight, partial_sum, l_gap, l_gaps, sup_l_gap
from .inequality import (
    Exponents,
    as_sequence,
    copson_constant,
    copson_lhs,
    dual_sides,
    ratio_functional,
    verify_inequality,
)
from .conditions import (
    Certificate,
    a1,
    a2,
    check_cond_16,
    check_cond_17,
    check_cond_115,
    p_L,
    p_116,
    theorem1_applicable,
    theorem1_certificate,
    theorem1prime_certificate,
    relaxed_chain,
    thresholds,
)
from .auxiliary import SignReport, aux_eval, aux_sign_scan
from .weight_builder import WeightTrace, build_weights, verify_21, verify_22
from .best_constant import (
    OptimizerConfig,
    RatioEstimate,
    brute_force_oracle,
    estimate_schedule,
    extremal_probe,
    minimize_ratio,
    stationarity_check,
)
