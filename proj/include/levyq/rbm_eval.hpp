#pragma once

#include "levyq/model.hpp"

namespace levyq {

// Reflected Brownian motion with drift `drift`, variance `variance`, started at x.
// For the queue fed by BrownianDrift input at service rate mu:
//   drift = lambda - mu, variance = lambda * sigma2.
struct RbmSpec {
    double x;
    double drift;
    double variance;
};

RbmSpec rbm_spec(const InputModel& model, double mu, double x);

// Transient distribution function P(Q(t) <= z | Q(0) = x):
//   Phi((z - x - m t) / (s sqrt(t))) - exp(2 m z / s^2) Phi((-z - x - m t) / (s sqrt(t))).
// Valid for any drift sign; t > 0.
double rbm_cdf(const RbmSpec& spec, double t, double z);

// E[Q(t)] = int_0^inf P(Q(t) > z) dz by adaptive quadrature (absolute tolerance
// 1e-8; integrand truncated where it falls below 1e-12).
double rbm_mean(const RbmSpec& spec, double t);

// Time average (1/T) int_0^T E[Q(t)] dt; noise-free counterpart of the
// Monte-Carlo C_T estimator for Brownian input.
double rbm_ct(const RbmSpec& spec, double T);

} // namespace levyq
