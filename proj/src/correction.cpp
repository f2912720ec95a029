#include "levyq/correction.hpp"
#include "levyq/errors.hpp"
#include "levyq/stationary.hpp"

#include <algorithm>
#include <cmath>

namespace levyq {

namespace {

void check_horizon(double T) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw parameter_error("horizon T must be positive and finite");
}

void check_level(double x, const char* what) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw parameter_error(std::string(what) + " must be nonnegative and finite");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw parameter_error("capacity cost alpha must be positive and finite");
}

} // namespace

double expected_passage_time(const InputModel& model, double mu, double x) {
    check_level(x, "start level x");
    require_stable(model, mu);
    return x / (mu - model.lambda);
}

double passage_time_second_moment(const InputModel& model, double mu, double v) {
    check_level(v, "start level v");
    require_stable(model, mu);
    const double d = mu - model.lambda;
    const Moments m = moments(model);
    return v * v / (d * d) + m.u2 * v / (d * d * d);
}

double psi_xy(const InputModel& model, double mu, double T, double x, double y) {
    check_horizon(T);
    check_level(x, "start level x");
    check_level(y, "start level y");
    require_stable(model, mu);
    return (x * x - y * y) / (2.0 * T * (mu - model.lambda));
}

double psi_T(const InputModel& model, double mu, double T, const InitialState& init) {
    check_horizon(T);
    require_stable(model, mu);
    const double q2 = init.second_moment();
    const StationaryMoments st = stationary_moments(model, mu);
    return (q2 - st.second_moment) / (2.0 * T * (mu - model.lambda));
}

double delta_bound_xy(const InputModel& model, double mu, double T, double x, double y) {
    check_horizon(T);
    check_level(x, "start level x");
    check_level(y, "start level y");
    require_stable(model, mu);
    const double d = mu - model.lambda;
    const double w = std::max(x, y);
    const Moments m = moments(model);
    return (w * w * w / (3.0 * d * d) + m.u2 * w * w / (2.0 * d * d * d)) / (T * T);
}

double delta_bound_surrogate(const InputModel& model, double mu, double T, double x,
                             double qinf_second_moment, double qinf_third_moment) {
    check_horizon(T);
    check_level(x, "start level x");
    if (!(qinf_second_moment >= 0.0) || !(qinf_third_moment >= 0.0))
        throw parameter_error("stationary moment surrogates must be nonnegative");
    require_stable(model, mu);
    const double d = mu - model.lambda;
    const Moments m = moments(model);
    const double q1 = stationary_moments(model, mu).mean;
    // E[(x + Q)^2] and E[(x + Q)^3] dominate E[max(x, Q)^k].
    const double m2 = x * x + 2.0 * x * q1 + qinf_second_moment;
    const double m3 = x * x * x + 3.0 * x * x * q1 + 3.0 * x * qinf_second_moment +
                      qinf_third_moment;
    return (m3 / (3.0 * d * d) + m.u2 * m2 / (2.0 * d * d * d)) / (T * T);
}

double approx_cost(const InputModel& model, double mu, double T, const InitialState& init) {
    return stationary_moments(model, mu).mean + psi_T(model, mu, T, init);
}

double approx_total_cost(const InputModel& model, double mu, double T, double alpha,
                         const InitialState& init) {
    check_alpha(alpha);
    return approx_cost(model, mu, T, init) + alpha * mu;
}

double mu_bullet(const InputModel& model, double alpha, const InitialState& init) {
    check_alpha(alpha);
    const double q2 = init.second_moment();
    const Moments m = moments(model);
    const double lam = model.lambda;
    return q2 / std::sqrt(8.0 * lam * m.u2 * alpha) - m.u3 / (3.0 * m.u2) -
           3.0 * std::sqrt(alpha * lam * m.u2 / 8.0);
}

double corrected_mu(const InputModel& model, double alpha, double T, const InitialState& init) {
    check_horizon(T);
    const double mu = mu_star_infinity(model, alpha) + mu_bullet(model, alpha, init) / T;
    return mu > 0.0 ? mu : 0.0;
}

} // namespace levyq
