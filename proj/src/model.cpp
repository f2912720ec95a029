#include "levyq/model.hpp"
#include "levyq/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace levyq {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw parameter_error("input rate lambda must be positive and finite");
}

// E[exp(theta B)] - 1 for B ~ Pareto(gamma, k), theta < 0. Integrating
// expm1(theta x) against the density avoids the cancellation that computing
// E[exp(theta B)] first would cause for small |theta|.
double pareto_kappa_u(double gamma, double k, double theta) {
    using boost::math::quadrature::gauss_kronrod;
    const double c = gamma * std::pow(k, gamma);
    auto f = [=](double x) { return std::expm1(theta * x) * c * std::pow(x, -gamma - 1.0); };
    return gauss_kronrod<double, 15>::integrate(
        f, k, std::numeric_limits<double>::infinity(), 12, 1e-12);
}

} // namespace

InputModel make_mm1(double lambda) {
    check_lambda(lambda);
    return InputModel{InputKind::CompoundPoissonExp, lambda};
}

InputModel make_mpareto(double lambda, double gamma, double k) {
    check_lambda(lambda);
    if (!(gamma > 3.0))
        throw parameter_error("Pareto tail index gamma must exceed 3 so that E[B^3] is finite");
    if (!(k > 0.0))
        throw parameter_error("Pareto scale k must be positive");
    const double mean = k * gamma / (gamma - 1.0);
    if (std::abs(mean - 1.0) > 1e-12)
        throw normalization_error("Pareto jump law must have unit mean: k*gamma/(gamma-1) = " +
                                  std::to_string(mean));
    InputModel m{InputKind::CompoundPoissonPareto, lambda};
    m.gamma = gamma;
    m.k = k;
    return m;
}

InputModel make_rbm(double lambda, double sigma2) {
    check_lambda(lambda);
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw parameter_error("Brownian variance sigma2 must be positive and finite");
    InputModel m{InputKind::BrownianDrift, lambda};
    m.sigma2 = sigma2;
    return m;
}

Moments moments(const InputModel& model) {
    switch (model.kind) {
    case InputKind::CompoundPoissonExp:
        return {2.0, 6.0};
    case InputKind::CompoundPoissonPareto: {
        const double g = model.gamma, k = model.k;
        return {k * k * g / (g - 2.0), k * k * k * g / (g - 3.0)};
    }
    case InputKind::BrownianDrift:
        return {model.sigma2, 0.0};
    }
    throw parameter_error("unknown input kind");
}

double levy_exponent(const InputModel& model, double mu, double theta) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw parameter_error("service rate mu must be nonnegative and finite");
    if (!std::isfinite(theta))
        throw domain_error("theta must be finite");
    double kappa_u = 0.0;
    switch (model.kind) {
    case InputKind::CompoundPoissonExp:
        if (theta >= 1.0)
            throw domain_error("exponential jumps require theta < 1");
        kappa_u = theta / (1.0 - theta);
        break;
    case InputKind::CompoundPoissonPareto:
        if (theta > 0.0)
            throw domain_error("Pareto jumps have no positive exponential moments; theta <= 0 required");
        kappa_u = theta == 0.0 ? 0.0 : pareto_kappa_u(model.gamma, model.k, theta);
        break;
    case InputKind::BrownianDrift:
        kappa_u = theta + 0.5 * model.sigma2 * theta * theta;
        break;
    }
    return model.lambda * kappa_u - mu * theta;
}

std::string model_name(const InputModel& model) {
    switch (model.kind) {
    case InputKind::CompoundPoissonExp:
        return "mm1";
    case InputKind::CompoundPoissonPareto:
        return "mpareto";
    case InputKind::BrownianDrift:
        return "rbm";
    }
    return "unknown";
}

void require_stable(const InputModel& model, double mu) {
    if (!(mu > model.lambda * (1.0 + 1e-9)))
        throw stability_error("mu = " + std::to_string(mu) + " is not above lambda = " +
                              std::to_string(model.lambda) + " by the required margin");
}

} // namespace levyq
