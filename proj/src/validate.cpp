#include "levyq/validate.hpp"

#include "levyq/correction.hpp"
#include "levyq/errors.hpp"
#include "levyq/optimize.hpp"
#include "levyq/rbm_eval.hpp"
#include "levyq/rng.hpp"
#include "levyq/stationary.hpp"
#include "levyq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace levyq {

namespace {

std::string describe(const char* fmt_str, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt_str, a, b);
    return buf;
}

// Third-moment input as seen by the analytic targets under fault injection.
double scaled_u3(const InputModel& model, double scale) { return moments(model).u3 * scale; }

// Stationary second moment with the perturbed third moment.
double q2_scaled(const InputModel& model, double mu, double scale) {
    const Moments m = moments(model);
    const double d = mu - model.lambda;
    return model.lambda * model.lambda * m.u2 * m.u2 / (2.0 * d * d) +
           model.lambda * scaled_u3(model, scale) / (3.0 * d);
}

// Transient deviation check: T (C_T - C_infinity) against (x^2 - E[Q_inf^2]) / (2 d).
CheckResult psi_check(const std::string& name, const InputModel& model, double mu, double x,
                      double T, double floor, const ExperimentConfig& cfg) {
    const SimConfig sim = cfg.sim.build();
    const InitialState init = InitialState::deterministic(x);
    const CostEstimate est = estimate_ct(model, mu, T, init, sim);
    const double c_inf = stationary_moments(model, mu).mean;
    const double d = mu - model.lambda;
    const double target = (x * x - q2_scaled(model, mu, cfg.validate.u3_scale)) / (2.0 * d);
    const double measured = std::abs(T * (est.mean - c_inf) - target);
    const double tolerance = std::max(floor, 3.0 * T * est.half_width);
    return {name, measured <= tolerance, measured, tolerance,
            describe("scaled deviation %.4f, target %.4f", T * (est.mean - c_inf), target)};
}

CheckResult warmup_check(const ExperimentConfig& cfg) {
    const InputModel model = make_mm1(1.0);
    const double mu = 2.0;
    const SimConfig sim = cfg.sim.build();
    const CostEstimate est =
        estimate_ct(model, mu, 10.0, InitialState::warmup(50.0), sim);
    const double target = stationary_moments(model, mu).mean;
    const double measured = std::abs(est.mean - target);
    const double tolerance = std::max(0.02, 3.0 * est.half_width);
    return {"warmup_reaches_stationarity", measured <= tolerance, measured, tolerance,
            describe("C_T from warm start %.4f, stationary mean %.4f", est.mean, target)};
}

void passage_checks(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    const InputModel model = make_mm1(1.0);
    const double mu = 2.0, x = 3.0;
    const long n = cfg.sim.replications;
    std::vector<double> taus(static_cast<std::size_t>(n));
    for (long r = 0; r < n; ++r) {
        rng::Stream stream(cfg.sim.seed, static_cast<std::uint64_t>(r), 7001);
        taus[static_cast<std::size_t>(r)] = sample_first_passage(model, mu, x, stream);
    }
    const MeanCi mean = mean_ci(taus, cfg.sim.ci_level);
    const double mean_target = expected_passage_time(model, mu, x);
    const double mean_dev = std::abs(mean.mean - mean_target);
    const double mean_tol = std::max(0.03, 3.0 * mean.half_width);
    out.push_back({"passage_mean", mean_dev <= mean_tol, mean_dev, mean_tol,
                   describe("sample mean %.4f, target %.4f", mean.mean, mean_target)});

    std::vector<double> squares(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        squares[i] = taus[i] * taus[i];
    const MeanCi m2 = mean_ci(squares, cfg.sim.ci_level);
    const double m2_target = passage_time_second_moment(model, mu, x);
    const double m2_dev = std::abs(m2.mean - m2_target);
    const double m2_tol = std::max(0.01 * m2_target, 3.0 * m2.half_width);
    out.push_back({"passage_second_moment", m2_dev <= m2_tol, m2_dev, m2_tol,
                   describe("sample second moment %.3f, target %.3f", m2.mean, m2_target)});
}

void coupling_checks(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    const InputModel model = make_mm1(1.0);
    const double mu = 2.0, x = 2.0, y = 0.5, T = 50.0;
    const long n = std::min<long>(cfg.sim.replications, 5000);
    long violations = 0;
    std::vector<double> integrals(static_cast<std::size_t>(n));
    for (long r = 0; r < n; ++r) {
        rng::Stream stream(cfg.sim.seed, static_cast<std::uint64_t>(r), 7002);
        const CoupledSummary c = coupled_difference(model, mu, T, x, y, stream);
        const bool ok = c.staircase_ok && c.tau_y <= c.tau_x &&
                        (c.tau_y > T || std::abs(c.diff_at_tau_y - (x - y)) <= 1e-9);
        violations += ok ? 0 : 1;
        integrals[static_cast<std::size_t>(r)] = c.integral_diff;
    }
    out.push_back({"coupling_staircase", violations == 0, static_cast<double>(violations), 0.0,
                   describe("%.0f of %.0f paths broke the monotone-gap property",
                            static_cast<double>(violations), static_cast<double>(n))});

    const MeanCi integral = mean_ci(integrals, cfg.sim.ci_level);
    const double target = (x * x - y * y) / (2.0 * (mu - model.lambda));
    const double dev = std::abs(integral.mean - target);
    const double tol = std::max(0.02, 3.0 * integral.half_width);
    out.push_back({"coupling_integral", dev <= tol, dev, tol,
                   describe("mean integrated gap %.4f, target %.4f", integral.mean, target)});
}

void rbm_checks(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    const InputModel model = make_rbm(1.0, 1.0);
    const double mu = 2.0, x = 1.5;
    SimConfig sim = cfg.sim.build();

    sim.replications = std::min<long>(cfg.sim.replications, 20000);
    sim.bm_step = 2.5e-4;
    const double t = 1.0;
    const auto curve = transient_mean_curve(model, mu, InitialState::deterministic(x), {t}, sim);
    const double exact_mean = rbm_mean(rbm_spec(model, mu, x), t);
    const double mean_dev = std::abs(curve[0].mean - exact_mean);
    const double mean_tol = std::max(0.015, 3.0 * curve[0].half_width + 0.01);
    out.push_back({"rbm_mean_vs_mc", mean_dev <= mean_tol, mean_dev, mean_tol,
                   describe("simulated E[Q(1)] %.4f, transform value %.4f", curve[0].mean,
                            exact_mean)});

    sim.bm_step = 5e-4;
    const double T = 2.0;
    const CostEstimate est = estimate_ct(model, mu, T, InitialState::deterministic(x), sim);
    const double exact_ct = rbm_ct(rbm_spec(model, mu, x), T);
    const double ct_dev = std::abs(est.mean - exact_ct);
    const double ct_tol = std::max(0.02, 3.0 * est.half_width + 0.01);
    out.push_back({"rbm_ct_vs_mc", ct_dev <= ct_tol, ct_dev, ct_tol,
                   describe("simulated C_T %.4f, transform value %.4f", est.mean, exact_ct)});
}

CheckResult scaling_check(const ExperimentConfig& cfg) {
    SimConfig sim = cfg.sim.build();
    sim.replications = std::min<long>(cfg.sim.replications, 50000);
    const InitialState init = InitialState::deterministic(2.0);
    const CostEstimate fast = estimate_ct(make_mm1(2.0), 3.0, 5.0, init, sim);
    const CostEstimate slow = estimate_ct(make_mm1(1.0), 1.5, 10.0, init, sim);
    const double dev = std::abs(fast.mean - slow.mean);
    const double tol = std::max(0.01, 3.0 * (fast.half_width + slow.half_width));
    return {"scaling_identity", dev <= tol, dev, tol,
            describe("accelerated %.4f vs slowed %.4f", fast.mean, slow.mean)};
}

CheckResult determinism_check(const ExperimentConfig& cfg) {
    SimConfig sim = cfg.sim.build();
    sim.replications = std::min<long>(cfg.sim.replications, 20000);
    sim.jobs = 1;
    const InputModel model = make_mm1(1.0);
    const InitialState init = InitialState::deterministic(1.0);
    const CostEstimate a = estimate_ct(model, 2.0, 5.0, init, sim);
    const CostEstimate b = estimate_ct(model, 2.0, 5.0, init, sim);
    sim.jobs = 3;
    const CostEstimate c = estimate_ct(model, 2.0, 5.0, init, sim);
    const double dev = std::max(std::abs(a.mean - b.mean), std::abs(a.mean - c.mean));
    return {"determinism_replay", dev == 0.0, dev, 0.0,
            describe("replay %.6f, 3-worker run %.6f", b.mean, c.mean)};
}

CheckResult convexity_check(const ExperimentConfig& cfg) {
    SimConfig sim = cfg.sim.build();
    sim.replications = std::min<long>(cfg.sim.replications, 10000);
    const InputModel model = make_mm1(1.0);
    const InitialState init = InitialState::deterministic(1.0);
    const double alpha = 1.0, T = 5.0;
    std::vector<double> mus(21);
    for (int i = 0; i < 21; ++i)
        mus[i] = 1.2 + 0.1 * i;
    const auto est = estimate_ct_multi(model, mus, T, init, sim);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < mus.size(); ++i) {
        const double left = est[i - 1].mean + alpha * mus[i - 1];
        const double mid = est[i].mean + alpha * mus[i];
        const double right = est[i + 1].mean + alpha * mus[i + 1];
        worst = std::min(worst, left + right - 2.0 * mid);
    }
    const double violation = -worst;
    return {"saa_convexity", violation <= 1e-9, violation, 1e-9,
            describe("largest convexity violation %.2e over a %.0f-point grid", violation, 21.0)};
}

CheckResult corrected_rule_check(const ExperimentConfig& cfg) {
    const InputModel model = make_mm1(1.0);
    const double alpha = 1.0, T = 200.0;
    const InitialState init = InitialState::deterministic(0.0);
    const Moments m = moments(model);
    const double shift = (cfg.validate.u3_scale - 1.0) * m.u3 / (3.0 * m.u2);
    const double rule = std::max(mu_star_infinity(model, alpha) +
                                     (mu_bullet(model, alpha, init) - shift) / T,
                                 0.0);
    const double minimizer = minimize_pi_hat(model, alpha, T, init).mu_star;
    const double measured = std::abs(minimizer - rule) * T;
    const double tolerance = 0.1 * std::abs(mu_bullet(model, alpha, init));
    return {"corrected_rule_limit", measured <= tolerance, measured, tolerance,
            describe("T-scaled distance %.4f between minimizer and rule (rule %.6f)", measured,
                     rule)};
}

} // namespace

std::vector<CheckResult> run_validation_suite(const ExperimentConfig& cfg) {
    validate_config(cfg);
    std::vector<CheckResult> results;
    results.push_back(psi_check("psi_vs_sim_exponential", make_mm1(1.0), 2.0, 2.0, 60.0, 0.3,
                                cfg));
    results.push_back(psi_check("psi_vs_sim_pareto", make_mpareto(1.0, 3.2, 0.6875), 2.0, 2.0,
                                60.0, 0.4, cfg));
    results.push_back(warmup_check(cfg));
    passage_checks(cfg, results);
    coupling_checks(cfg, results);
    rbm_checks(cfg, results);
    results.push_back(scaling_check(cfg));
    results.push_back(determinism_check(cfg));
    results.push_back(convexity_check(cfg));
    results.push_back(corrected_rule_check(cfg));
    return results;
}

int run_validate(const ExperimentConfig& cfg, std::ostream& log) {
    const std::vector<CheckResult> results = run_validation_suite(cfg);
    int failures = 0;
    for (const CheckResult& r : results) {
        log << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  measured " << r.measured
            << "  tolerance " << r.tolerance << "  (" << r.detail << ")\n";
        failures += r.pass ? 0 : 1;
    }
    log << (failures == 0 ? "all checks passed" : "some checks FAILED") << " (" << results.size()
        << " checks, " << failures << " failures)\n";
    return failures == 0 ? 0 : 1;
}

} // namespace levyq
