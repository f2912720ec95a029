#include "levyq/stationary.hpp"
#include "levyq/errors.hpp"

#include <cmath>

namespace levyq {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw parameter_error("capacity cost alpha must be positive and finite");
}

} // namespace

StationaryMoments stationary_moments(const InputModel& model, double mu) {
    require_stable(model, mu);
    const Moments m = moments(model);
    const double lam = model.lambda;
    const double d = mu - lam;
    StationaryMoments s;
    s.mean = lam * m.u2 / (2.0 * d);
    s.second_moment = lam * lam * m.u2 * m.u2 / (2.0 * d * d) + lam * m.u3 / (3.0 * d);
    return s;
}

double pi_infinity(const InputModel& model, double mu, double alpha) {
    check_alpha(alpha);
    return stationary_moments(model, mu).mean + alpha * mu;
}

double mu_star_infinity(const InputModel& model, double alpha) {
    check_alpha(alpha);
    const Moments m = moments(model);
    return model.lambda + std::sqrt(model.lambda * m.u2 / (2.0 * alpha));
}

double benchmark_congestion(const InputModel& model, double alpha) {
    check_alpha(alpha);
    const Moments m = moments(model);
    return std::sqrt(alpha * model.lambda * m.u2 / 2.0);
}

} // namespace levyq
