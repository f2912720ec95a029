#include "levyq/optimize.hpp"
#include "levyq/correction.hpp"
#include "levyq/errors.hpp"
#include "levyq/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace levyq {

namespace {

struct PiHat {
    double lambda, u2, u3, alpha, T, q2;

    double value(double mu) const {
        const double d = mu - lambda;
        const double psi = (q2 / d - lambda * lambda * u2 * u2 / (2.0 * d * d * d) -
                            lambda * u3 / (3.0 * d * d)) /
                           (2.0 * T);
        return alpha * mu + lambda * u2 / (2.0 * d) + psi;
    }

    double derivative(double mu) const {
        const double d = mu - lambda;
        const double d2 = d * d;
        return alpha - lambda * u2 / (2.0 * d2) +
               (-q2 / d2 + 1.5 * lambda * lambda * u2 * u2 / (d2 * d2) +
                (2.0 / 3.0) * lambda * u3 / (d2 * d)) /
                   (2.0 * T);
    }
};

void check_alpha_T(double alpha, double T) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw parameter_error("capacity cost alpha must be positive and finite");
    if (!(T > 0.0) || !std::isfinite(T))
        throw parameter_error("horizon T must be positive and finite");
}

struct Bracket {
    double lo;
    double hi;
};

Bracket search_interval(const InputModel& model, double alpha) {
    return {model.lambda * (1.0 + 1e-6), mu_star_infinity(model, alpha) + 10.0 / std::sqrt(alpha)};
}

} // namespace

MinimizerResult minimize_pi_hat(const InputModel& model, double alpha, double T,
                                const InitialState& init) {
    check_alpha_T(alpha, T);
    const Moments m = moments(model);
    const PiHat f{model.lambda, m.u2, m.u3, alpha, T, init.second_moment()};
    const Bracket br = search_interval(model, alpha);

    int evals = 0;
    const int grid_n = 512;
    const double cell = (br.hi - br.lo) / grid_n;
    // rightmost sign change of f' from negative to positive
    double a = 0.0, b = 0.0;
    bool found = false;
    double prev_mu = br.lo;
    double prev_df = f.derivative(prev_mu);
    double last_df = prev_df;
    ++evals;
    for (int i = 1; i <= grid_n; ++i) {
        const double mu = br.lo + (br.hi - br.lo) * i / grid_n;
        const double df = f.derivative(mu);
        ++evals;
        if (prev_df < 0.0 && df >= 0.0) {
            a = prev_mu;
            b = mu;
            found = true;
        }
        prev_mu = mu;
        prev_df = df;
        last_df = df;
    }
    if (!found) {
        // No interior stationary point. If the objective is still decreasing at
        // the right edge the minimum sits on the upper boundary; otherwise it is
        // increasing everywhere to the right of the pole at mu = lambda and the
        // infimum is the divergence at the left edge. Either way the result is a
        // boundary point, flagged via interior = false, with the adjacent grid
        // cell as the reported bracket.
        const bool right = last_df <= 0.0;
        const double mu_star = right ? br.hi : br.lo;
        ++evals;
        return {mu_star, f.value(mu_star), right ? br.hi - cell : br.lo,
                right ? br.hi : br.lo + cell, evals, false};
    }
    const double cell_lo = a, cell_hi = b;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, a); ++it) {
        const double mid = 0.5 * (a + b);
        const double df = f.derivative(mid);
        ++evals;
        if (df < 0.0)
            a = mid;
        else
            b = mid;
    }
    const double mu_star = 0.5 * (a + b);
    ++evals;
    return {mu_star, f.value(mu_star), cell_lo, cell_hi, evals, true};
}

SaaResult minimize_pi_t(const InputModel& model, double alpha, double T, const InitialState& init,
                        const SimConfig& cfg) {
    check_alpha_T(alpha, T);
    const Bracket br = search_interval(model, alpha);
    int evals = 0;
    auto objective = [&](double mu) {
        ++evals;
        return estimate_ct(model, mu, T, init, cfg).mean + alpha * mu;
    };

    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = br.lo, b = br.hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-3) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = objective(d);
        }
    }
    const double mu_star = 0.5 * (a + b);
    const double value = objective(mu_star);

    // convexity audit on a coarse grid; a violation means path reuse is broken
    const int audit_n = 21;
    std::vector<double> g(audit_n);
    double scale = 1.0;
    for (int i = 0; i < audit_n; ++i) {
        const double mu = br.lo + (br.hi - br.lo) * i / (audit_n - 1);
        g[i] = objective(mu);
        scale = std::max(scale, std::abs(g[i]));
    }
    const double tol = (model.kind == InputKind::BrownianDrift)
                           ? 5.0 * cfg.bm_step * std::min(1.0, T) * scale
                           : 1e-9 * scale;
    for (int i = 1; i + 1 < audit_n; ++i) {
        const double second = g[i - 1] - 2.0 * g[i] + g[i + 1];
        if (second < -tol)
            throw diagnostic_error("sample-average objective is not convex at grid index " +
                                   std::to_string(i) + " (second difference " +
                                   std::to_string(second) + "); path reuse is broken");
    }
    return {mu_star, value, evals};
}

StaffingComparison compare_staffing(const InputModel& model, double alpha, double T,
                                    const InitialState& init, const SimConfig& cfg) {
    check_alpha_T(alpha, T);
    StaffingComparison out;
    out.mu_inf = mu_star_infinity(model, alpha);
    out.mu_corrected = corrected_mu(model, alpha, T, init);
    const auto ct = estimate_ct_multi(model, {out.mu_inf, out.mu_corrected}, T, init, cfg);
    out.pi_at_mu_inf = ct[0];
    out.pi_at_mu_inf.mean += alpha * out.mu_inf;
    out.pi_at_corrected = ct[1];
    out.pi_at_corrected.mean += alpha * out.mu_corrected;
    out.rel_reduction = (out.pi_at_mu_inf.mean - out.pi_at_corrected.mean) / out.pi_at_mu_inf.mean;
    return out;
}

std::vector<GapPoint> optimality_gap(const InputModel& model, double alpha,
                                     const InitialState& init,
                                     const std::vector<double>& horizons) {
    if (horizons.empty())
        throw parameter_error("optimality_gap needs at least one horizon");
    std::vector<GapPoint> out;
    out.reserve(horizons.size());
    for (double T : horizons) {
        const MinimizerResult res = minimize_pi_hat(model, alpha, T, init);
        const double at_inf =
            approx_total_cost(model, mu_star_infinity(model, alpha), T, alpha, init);
        const double gap = at_inf - res.value;
        out.push_back({T, gap, gap * T * T, res.interior});
    }
    return out;
}

} // namespace levyq
