#include "levyq/rbm_eval.hpp"
#include "levyq/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace levyq {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double norm_cdf(double b) { return 0.5 * std::erfc(-b * 0.70710678118654752440); }

// log Phi(b), usable far in the left tail.
double log_norm_cdf(double b) {
    if (b > -25.0) {
        const double p = norm_cdf(b);
        if (p > 0.0)
            return std::log(p);
    }
    const double b2 = b * b;
    return -0.5 * b2 - std::log(-b) - 0.5 * kLog2Pi +
           std::log1p(-1.0 / b2 + 3.0 / (b2 * b2) - 15.0 / (b2 * b2 * b2));
}

// exp(a) * Phi(b) without overflowing either factor.
double exp_times_norm_cdf(double a, double b) {
    if (b >= 0.0 || a < 1.0)
        return std::exp(a) * norm_cdf(b);
    const double log_term = a + log_norm_cdf(b);
    return log_term < -745.0 ? 0.0 : std::exp(log_term);
}

void check_spec(const RbmSpec& spec) {
    if (!(spec.x >= 0.0) || !std::isfinite(spec.x))
        throw parameter_error("rbm start level must be nonnegative and finite");
    if (!(spec.variance > 0.0) || !std::isfinite(spec.variance))
        throw parameter_error("rbm variance must be positive and finite");
    if (!std::isfinite(spec.drift))
        throw parameter_error("rbm drift must be finite");
}

double tail_probability(const RbmSpec& spec, double t, double z) {
    const double st = std::sqrt(spec.variance * t);
    const double a = (z - spec.x - spec.drift * t) / st;
    const double b = (-z - spec.x - spec.drift * t) / st;
    return norm_cdf(-a) + exp_times_norm_cdf(2.0 * spec.drift * z / spec.variance, b);
}

} // namespace

RbmSpec rbm_spec(const InputModel& model, double mu, double x) {
    if (model.kind != InputKind::BrownianDrift)
        throw unsupported_analytics("rbm_spec requires a BrownianDrift input model");
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw parameter_error("service rate mu must be nonnegative and finite");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw parameter_error("start level x must be nonnegative and finite");
    return {x, model.lambda - mu, model.lambda * model.sigma2};
}

double rbm_cdf(const RbmSpec& spec, double t, double z) {
    check_spec(spec);
    if (!(t > 0.0) || !std::isfinite(t))
        throw domain_error("rbm_cdf needs t > 0");
    if (z < 0.0)
        return 0.0;
    return std::clamp(1.0 - tail_probability(spec, t, z), 0.0, 1.0);
}

double rbm_mean(const RbmSpec& spec, double t) {
    check_spec(spec);
    if (!(t > 0.0) || !std::isfinite(t))
        throw domain_error("rbm_mean needs t > 0");
    const double st = std::sqrt(spec.variance * t);
    double z_max = std::max(spec.x + spec.drift * t, 0.0) + 8.0 * st;
    if (spec.drift < 0.0)
        z_max = std::max(z_max, 15.0 * spec.variance / (-2.0 * spec.drift));
    // grow the truncation point until the integrand is provably below 1e-12
    while (tail_probability(spec, t, z_max) > 1e-12)
        z_max *= 2.0;
    auto f = [&](double z) { return tail_probability(spec, t, z); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, z_max, 14, 1e-9);
}

double rbm_ct(const RbmSpec& spec, double T) {
    check_spec(spec);
    if (!(T > 0.0) || !std::isfinite(T))
        throw domain_error("rbm_ct needs T > 0");
    auto f = [&](double t) { return rbm_mean(spec, t); };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, T, 14, 1e-7);
    return integral / T;
}

} // namespace levyq
