#pragma once

#include <cstddef>
#include <vector>

namespace levyq {

// Compensated (Kahan) sum in index order; the result is independent of how the
// values were produced, which keeps multi-threaded estimators reproducible.
double kahan_total(const std::vector<double>& values);

struct MeanCi {
    double mean;
    double half_width;
};

// Sample mean with a normal-approximation confidence interval at level ci_level.
MeanCi mean_ci(const std::vector<double>& values, double ci_level);

// Standard normal quantile (used for confidence intervals).
double normal_quantile(double p);

} // namespace levyq
