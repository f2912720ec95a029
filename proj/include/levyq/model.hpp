#pragma once

#include <string>

namespace levyq {

// Kind of Levy input U feeding the queue. In all cases E[U(1)] = 1, so lambda
// alone sets the offered load and mu > lambda is the stability region.
enum class InputKind {
    CompoundPoissonExp,    // unit-rate compound Poisson, Exp(1) jumps
    CompoundPoissonPareto, // unit-rate compound Poisson, Pareto(gamma, k) jumps
    BrownianDrift,         // unit drift plus sigma * Brownian motion
};

// Second and third moments of the jump law (u2 = E[B^2], u3 = E[B^3]);
// for Brownian input the same roles are played by sigma^2 and 0.
struct Moments {
    double u2;
    double u3;
};

// Net-input model: X_mu(t) = U(lambda t) - mu t for a service rate mu chosen later.
struct InputModel {
    InputKind kind;
    double lambda;
    double gamma  = 0.0; // Pareto tail index
    double k      = 0.0; // Pareto scale (left endpoint of the jump law)
    double sigma2 = 0.0; // Brownian variance parameter
};

// Factories validate parameters and enforce the unit-mean normalization.
InputModel make_mm1(double lambda);
InputModel make_mpareto(double lambda, double gamma, double k);
InputModel make_rbm(double lambda, double sigma2);

Moments moments(const InputModel& model);

// Levy exponent kappa_mu(theta) = log E[exp(theta X_mu(1))]
//                               = lambda * kappa_U(theta) - mu * theta.
// Domain: theta < 1 for CompoundPoissonExp, theta <= 0 for CompoundPoissonPareto,
// all real theta for BrownianDrift.
double levy_exponent(const InputModel& model, double mu, double theta);

std::string model_name(const InputModel& model);

// Throws stability_error unless mu > lambda * (1 + 1e-9).
void require_stable(const InputModel& model, double mu);

} // namespace levyq
