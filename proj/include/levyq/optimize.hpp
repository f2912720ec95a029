#pragma once

#include "levyq/initial_state.hpp"
#include "levyq/model.hpp"
#include "levyq/simulate.hpp"

#include <vector>

namespace levyq {

struct MinimizerResult {
    double mu_star;
    double value;
    double bracket_lo; // refined bracket around mu_star; value <= both endpoint values
    double bracket_hi;
    int evaluations;
    bool interior; // false if no interior stationary point was found in the search interval
};

// Minimizes the corrected deterministic objective Pi_infinity + Psi_T over
// (lambda (1 + 1e-6), mu_star_infinity + 10 / sqrt(alpha)]. The objective
// diverges to -infinity at the left endpoint, so the reported minimizer is the
// rightmost interior local minimum (derivative sign change - to +), which is the
// one the corrected staffing rule approximates. For horizons short enough that
// no interior stationary point exists the result is the boundary point the
// objective decreases into, flagged with interior = false.
MinimizerResult minimize_pi_hat(const InputModel& model, double alpha, double T,
                                const InitialState& init);

struct SaaResult {
    double mu_star;
    double value;
    int evaluations;
};

// Sample-average approximation of min_mu Pi_T(mu) with common random numbers:
// every candidate mu is evaluated on the same replication streams, which makes
// the objective deterministic and (pathwise) convex, then golden-section search
// narrows the minimizer to 1e-3. A convexity audit on a coarse grid guards
// against path-reuse bugs.
SaaResult minimize_pi_t(const InputModel& model, double alpha, double T, const InitialState& init,
                        const SimConfig& cfg);

struct StaffingComparison {
    double mu_inf;                // stationary-optimal rate
    double mu_corrected;          // horizon-corrected rate
    CostEstimate pi_at_mu_inf;    // Pi_T at mu_inf (total cost)
    CostEstimate pi_at_corrected; // Pi_T at mu_corrected
    double rel_reduction;         // (Pi(mu_inf) - Pi(corrected)) / Pi(mu_inf)
};

// Evaluates both staffing rules on common random numbers.
StaffingComparison compare_staffing(const InputModel& model, double alpha, double T,
                                    const InitialState& init, const SimConfig& cfg);

struct GapPoint {
    double T;
    double gap;    // Pi_hat_T(mu_star_infinity) - Pi_hat_T(minimizer)
    double gap_t2; // gap * T^2
    bool interior;
};

// Optimality gap of the stationary rule under the corrected objective, over a
// grid of horizons; gap * T^2 should approach a constant.
std::vector<GapPoint> optimality_gap(const InputModel& model, double alpha,
                                     const InitialState& init, const std::vector<double>& horizons);

} // namespace levyq
