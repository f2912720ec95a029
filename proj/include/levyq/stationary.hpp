#pragma once

#include "levyq/model.hpp"

namespace levyq {

// First two moments of the stationary workload Q(infinity) for service rate mu:
//   E[Q]   = lambda u2 / (2 (mu - lambda))
//   E[Q^2] = lambda^2 u2^2 / (2 (mu - lambda)^2) + lambda u3 / (3 (mu - lambda))
struct StationaryMoments {
    double mean;
    double second_moment;
};

StationaryMoments stationary_moments(const InputModel& model, double mu);

// Long-run cost rate Pi_infinity(mu) = E[Q(infinity)] + alpha * mu.
double pi_infinity(const InputModel& model, double mu, double alpha);

// Unconstrained minimizer of Pi_infinity: lambda + sqrt(lambda u2 / (2 alpha)).
double mu_star_infinity(const InputModel& model, double alpha);

// Congestion cost at the optimum, sqrt(alpha lambda u2 / 2). Twice this value is
// used as the high initial backlog in the staffing tables.
double benchmark_congestion(const InputModel& model, double alpha);

} // namespace levyq
