"""Transient-horizon cost corrections and corrected staffing rules for
single-server queues with Levy input.

The heavy lifting lives in the compiled extension ``levyq._core``; this
package re-exports its public names.
"""

from ._core import (
    CostEstimate,
    Error,
    GapPoint,
    InitialState,
    InputKind,
    InputModel,
    MinimizerResult,
    Moments,
    RbmSpec,
    SimConfig,
    StaffingComparison,
    StationaryMoments,
    approx_cost,
    approx_total_cost,
    benchmark_congestion,
    compare_staffing,
    corrected_mu,
    estimate_ct,
    estimate_ct_multi,
    expected_passage_time,
    levy_exponent,
    make_mm1,
    make_mpareto,
    make_rbm,
    minimize_pi_hat,
    model_name,
    moments,
    mu_bullet,
    mu_star_infinity,
    optimality_gap,
    passage_time_second_moment,
    pi_infinity,
    psi_t,
    psi_xy,
    rbm_cdf,
    rbm_ct,
    rbm_mean,
    rbm_spec,
    stationary_moments,
)

__all__ = [
    "CostEstimate",
    "Error",
    "GapPoint",
    "InitialState",
    "InputKind",
    "InputModel",
    "MinimizerResult",
    "Moments",
    "RbmSpec",
    "SimConfig",
    "StaffingComparison",
    "StationaryMoments",
    "approx_cost",
    "approx_total_cost",
    "benchmark_congestion",
    "compare_staffing",
    "corrected_mu",
    "estimate_ct",
    "estimate_ct_multi",
    "expected_passage_time",
    "levy_exponent",
    "make_mm1",
    "make_mpareto",
    "make_rbm",
    "minimize_pi_hat",
    "model_name",
    "moments",
    "mu_bullet",
    "mu_star_infinity",
    "optimality_gap",
    "passage_time_second_moment",
    "pi_infinity",
    "psi_t",
    "psi_xy",
    "rbm_cdf",
    "rbm_ct",
    "rbm_mean",
    "rbm_spec",
    "stationary_moments",
]
