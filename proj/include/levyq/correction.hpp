#pragma once

#include "levyq/initial_state.hpp"
#include "levyq/model.hpp"

namespace levyq {

// Transient-horizon correction terms for the finite-horizon average congestion
// cost C_T(mu) = (1/T) int_0^T E[Q(t)] dt around its stationary limit:
//
//   C_T(mu) = C_infinity(mu) + Psi_T(mu) + Delta_T(mu),  Delta_T = O(1/T^2),
//   Psi_T(mu) = (E[Q(0)^2] - E[Q(infinity)^2]) / (2 T (mu - lambda)).

// Mean time for the workload started at x to first hit zero: x / (mu - lambda).
double expected_passage_time(const InputModel& model, double mu, double x);

// Second moment of that passage time started at v:
//   v^2 / (mu - lambda)^2 + u2 v / (mu - lambda)^3.
double passage_time_second_moment(const InputModel& model, double mu, double v);

// Leading transient correction between two deterministic starts x and y:
//   Psi^{x,y}_T = (x^2 - y^2) / (2 T (mu - lambda)).
double psi_xy(const InputModel& model, double mu, double T, double x, double y);

// Psi_T for an initial state with known second moment (deterministic or
// exponential start; warm-up starts are rejected).
double psi_T(const InputModel& model, double mu, double T, const InitialState& init);

// Bound on the remainder |Delta^{x,y}_T| for deterministic starts x, y:
//   (1/T^2) [ max(x,y)^3 / (3 (mu-lambda)^2) + u2 max(x,y)^2 / (2 (mu-lambda)^3) ].
double delta_bound_xy(const InputModel& model, double mu, double T, double x, double y);

// Same bound with the comparison level integrated out against the stationary
// law, using max(x, Q) <= x + Q and caller-supplied E[Q(infinity)^2], E[Q(infinity)^3].
double delta_bound_surrogate(const InputModel& model, double mu, double T, double x,
                             double qinf_second_moment, double qinf_third_moment);

// Corrected congestion cost C_infinity + Psi_T.
double approx_cost(const InputModel& model, double mu, double T, const InitialState& init);

// Corrected total cost Pi_infinity + Psi_T (the objective whose minimizer the
// corrected staffing rule approximates).
double approx_total_cost(const InputModel& model, double mu, double T, double alpha,
                         const InitialState& init);

// First-order staffing adjustment:
//   mu_bullet = E[Q(0)^2] / sqrt(8 lambda u2 alpha) - u3 / (3 u2) - 3 sqrt(alpha lambda u2 / 8).
double mu_bullet(const InputModel& model, double alpha, const InitialState& init);

// Corrected capacity rule [mu_star_infinity + mu_bullet / T]^+, clamped to exactly 0.
double corrected_mu(const InputModel& model, double alpha, double T, const InitialState& init);

} // namespace levyq
