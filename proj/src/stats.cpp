#include "levyq/stats.hpp"
#include "levyq/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>

namespace levyq {

double kahan_total(const std::vector<double>& values) {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw parameter_error("normal quantile needs p in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

MeanCi mean_ci(const std::vector<double>& values, double ci_level) {
    if (values.size() < 2)
        throw config_error("confidence interval needs at least 2 replications");
    if (!(ci_level > 0.0) || !(ci_level < 1.0))
        throw parameter_error("ci_level must lie in (0, 1)");
    const double n = static_cast<double>(values.size());
    const double mean = kahan_total(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = kahan_total(sq) / (n - 1.0);
    const double z = normal_quantile(0.5 * (1.0 + ci_level));
    return {mean, z * std::sqrt(var / n)};
}

} // namespace levyq
