#include "levyq/simulate.hpp"
#include "levyq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace levyq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sim_args(double mu, double T, double bm_step) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw parameter_error("service rate mu must be nonnegative and finite");
    if (!(T > 0.0) || !std::isfinite(T))
        throw parameter_error("horizon T must be positive and finite");
    if (!(bm_step > 0.0) || !(bm_step <= 0.1))
        throw parameter_error("bm_step must lie in (0, 0.1]");
}

double draw_jump(const InputModel& m, rng::Stream& g) {
    if (m.kind == InputKind::CompoundPoissonExp)
        return g.exponential(1.0);
    return g.pareto(m.gamma, m.k);
}

double draw_initial(const InitialState& init, rng::Stream& g) {
    switch (init.kind()) {
    case InitialState::Kind::Deterministic:
        return init.value();
    case InitialState::Kind::Exponential:
        return g.exponential(1.0 / init.value());
    case InitialState::Kind::Warmup:
        return 0.0; // the walk itself provides the warm-up segment
    }
    return 0.0;
}

// Integral of the clipped linear level max(q - mu (s - t0), 0), s in [t0, t1],
// restricted to the window [a, b].
double seg_integral(double q, double mu, double t0, double t1, double a, double b) {
    const double lo = std::max(t0, a);
    double hi = std::min(t1, b);
    if (hi <= lo || q <= 0.0)
        return 0.0;
    if (mu > 0.0)
        hi = std::min(hi, t0 + q / mu);
    if (hi <= lo)
        return 0.0;
    const double q_lo = q - mu * (lo - t0);
    const double q_hi = q - mu * (hi - t0);
    return 0.5 * (q_lo + q_hi) * (hi - lo);
}

// Exact event-by-event walk of the compound-Poisson queue on [0, t_end], with
// cost and first-empty bookkeeping restricted to the window [t_begin, t_end].
// `times`/`samples` (optional) collect Q at grid points inside the window,
// reported relative to t_begin.
PathSummary walk_cp(const InputModel& m, double mu, double x0, double t_begin, double t_end,
                    rng::Stream& g, const std::vector<double>* times = nullptr,
                    std::vector<double>* samples = nullptr) {
    double t = 0.0, q = x0, integral = 0.0;
    double first_empty = kInf;
    std::size_t next_time = 0;
    while (true) {
        const double gap = g.exponential(m.lambda);
        const bool arrives = t + gap < t_end;
        const double seg_end = arrives ? t + gap : t_end;

        integral += seg_integral(q, mu, t, seg_end, t_begin, t_end);
        if (first_empty == kInf) {
            double s0 = kInf; // first zero time within this segment
            if (q <= 0.0)
                s0 = t;
            else if (mu > 0.0)
                s0 = t + q / mu;
            const double cand = std::max(s0, t_begin);
            if (cand <= seg_end)
                first_empty = cand - t_begin;
        }
        if (times) {
            for (; next_time < times->size(); ++next_time) {
                const double tj = t_begin + (*times)[next_time];
                if (tj >= seg_end)
                    break;
                (*samples)[next_time] = std::max(q - mu * (tj - t), 0.0);
            }
        }

        const double q_end = std::max(q - mu * (seg_end - t), 0.0);
        if (!arrives) {
            if (times) // grid points at exactly t_end
                for (; next_time < times->size(); ++next_time)
                    (*samples)[next_time] = q_end;
            return {integral, q_end, first_empty, first_empty != kInf};
        }
        q = q_end + draw_jump(m, g);
        t = seg_end;
    }
}

// Euler walk of the reflected Brownian queue; same windowing contract as walk_cp.
PathSummary walk_bm(const InputModel& m, double mu, double x0, double t_begin, double t_end,
                    rng::Stream& g, double h, const std::vector<double>* times = nullptr,
                    std::vector<double>* samples = nullptr) {
    const double drift = m.lambda - mu;
    const double s = std::sqrt(m.lambda * m.sigma2);
    double t = 0.0, q = x0, integral = 0.0;
    double first_empty = (x0 <= 0.0 && t_begin <= 0.0) ? 0.0 : kInf;
    std::size_t next_time = 0;
    if (times)
        for (; next_time < times->size() && t_begin + (*times)[next_time] <= 0.0; ++next_time)
            (*samples)[next_time] = q;
    while (t < t_end) {
        const double dt = std::min(h, t_end - t);
        const double q_next = std::max(q + drift * dt + s * std::sqrt(dt) * g.normal(), 0.0);
        const double t_next = t + dt;
        if (t_next > t_begin) {
            const double lo = std::max(t, t_begin);
            const double q_lo = q + (q_next - q) * (lo - t) / dt;
            integral += 0.5 * (q_lo + q_next) * (t_next - lo);
            if (first_empty == kInf && q_next <= 0.0)
                first_empty = std::max(t_next, t_begin) - t_begin;
        }
        if (times) {
            for (; next_time < times->size(); ++next_time) {
                const double tj = t_begin + (*times)[next_time];
                if (tj > t_next)
                    break;
                (*samples)[next_time] = q_next;
            }
        }
        q = q_next;
        t = t_next;
    }
    return {integral, q, first_empty, first_empty != kInf};
}

struct Window {
    double begin;
    double end;
};

Window path_window(const InitialState& init, double T) {
    if (init.kind() == InitialState::Kind::Warmup)
        return {init.value(), init.value() + T};
    return {0.0, T};
}

PathSummary run_path(const InputModel& model, double mu, double T, const InitialState& init,
                     rng::Stream& g, double bm_step, const std::vector<double>* times = nullptr,
                     std::vector<double>* samples = nullptr) {
    const Window w = path_window(init, T);
    const double x0 = draw_initial(init, g);
    if (model.kind == InputKind::BrownianDrift)
        return walk_bm(model, mu, x0, w.begin, w.end, g, bm_step * std::min(1.0, T), times,
                       samples);
    return walk_cp(model, mu, x0, w.begin, w.end, g, times, samples);
}

int resolve_jobs(int jobs) {
    if (jobs > 0)
        return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(rep) for rep in [0, n) over `jobs` threads in contiguous blocks. Each
// replication writes only to its own slots, so the schedule cannot change results.
void parallel_reps(long n, int jobs, const std::function<void(long)>& f) {
    jobs = std::min<long>(resolve_jobs(jobs), n);
    if (jobs <= 1) {
        for (long r = 0; r < n; ++r)
            f(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    const long base = n / jobs, extra = n % jobs;
    long begin = 0;
    for (int w = 0; w < jobs; ++w) {
        const long len = base + (w < extra ? 1 : 0);
        pool.emplace_back([&f, begin, len] {
            for (long r = begin; r < begin + len; ++r)
                f(r);
        });
        begin += len;
    }
    for (auto& th : pool)
        th.join();
}

void check_cfg(const SimConfig& cfg) {
    if (cfg.replications < 2)
        throw config_error("at least 2 replications are required");
    if (!(cfg.ci_level > 0.0) || !(cfg.ci_level < 1.0))
        throw config_error("ci_level must lie in (0, 1)");
    if (!(cfg.bm_step > 0.0) || !(cfg.bm_step <= 0.1))
        throw config_error("bm_step must lie in (0, 0.1]");
}

} // namespace

PathSummary simulate_path(const InputModel& model, double mu, double T, const InitialState& init,
                          rng::Stream& stream, double bm_step) {
    check_sim_args(mu, T, bm_step);
    return run_path(model, mu, T, init, stream, bm_step);
}

std::vector<CostEstimate> estimate_ct_multi(const InputModel& model, const std::vector<double>& mus,
                                            double T, const InitialState& init,
                                            const SimConfig& cfg) {
    check_cfg(cfg);
    for (double mu : mus)
        check_sim_args(mu, T, cfg.bm_step);
    const long n = cfg.replications;
    std::vector<std::vector<double>> values(mus.size(), std::vector<double>(n));
    parallel_reps(n, cfg.jobs, [&](long rep) {
        for (std::size_t j = 0; j < mus.size(); ++j) {
            rng::Stream g(cfg.seed, static_cast<std::uint64_t>(rep));
            values[j][rep] = run_path(model, mus[j], T, init, g, cfg.bm_step).integral_q / T;
        }
    });
    std::vector<CostEstimate> out;
    out.reserve(mus.size());
    for (std::size_t j = 0; j < mus.size(); ++j) {
        const MeanCi ci = mean_ci(values[j], cfg.ci_level);
        out.push_back({ci.mean, ci.half_width, n, cfg.seed});
    }
    return out;
}

CostEstimate estimate_ct(const InputModel& model, double mu, double T, const InitialState& init,
                         const SimConfig& cfg) {
    return estimate_ct_multi(model, {mu}, T, init, cfg).front();
}

CoupledSummary coupled_difference(const InputModel& model, double mu, double T, double x, double y,
                                  rng::Stream& stream, double bm_step) {
    check_sim_args(mu, T, bm_step);
    if (!(x >= y) || !(y >= 0.0) || !std::isfinite(x))
        throw parameter_error("coupled start levels must satisfy x >= y >= 0");

    CoupledSummary out{kInf, kInf, 0.0, x - y, true, false};
    if (model.kind == InputKind::BrownianDrift) {
        const double drift = model.lambda - mu;
        const double s = std::sqrt(model.lambda * model.sigma2);
        const double h = bm_step * std::min(1.0, T);
        double t = 0.0, qx = x, qy = y, integral = 0.0;
        if (qx <= 0.0)
            out.tau_x = 0.0;
        if (qy <= 0.0)
            out.tau_y = 0.0;
        while (t < T) {
            const double dt = std::min(h, T - t);
            const double dq = drift * dt + s * std::sqrt(dt) * stream.normal();
            const double nx = std::max(qx + dq, 0.0);
            const double ny = std::max(qy + dq, 0.0);
            if (nx - ny > qx - qy + 1e-12)
                out.staircase_ok = false;
            integral += 0.5 * ((qx - qy) + (nx - ny)) * dt;
            t += dt;
            if (out.tau_y == kInf && ny <= 0.0) {
                out.tau_y = t;
                out.diff_at_tau_y = nx - ny;
            }
            if (out.tau_x == kInf && nx <= 0.0)
                out.tau_x = t;
            qx = nx;
            qy = ny;
        }
        out.integral_diff = integral;
        out.both_absorbed = out.tau_x <= T;
        return out;
    }

    double t = 0.0, qx = x, qy = y;
    double ix = 0.0, iy = 0.0;
    double prev_diff = x - y;
    auto note_diff = [&](double d) {
        if (d > prev_diff + 1e-12)
            out.staircase_ok = false;
        prev_diff = d;
    };
    if (qx <= 0.0)
        out.tau_x = 0.0;
    if (qy <= 0.0)
        out.tau_y = 0.0;
    while (true) {
        const double gap = stream.exponential(model.lambda);
        const bool arrives = t + gap < T;
        const double seg_end = arrives ? t + gap : T;
        ix += seg_integral(qx, mu, t, seg_end, 0.0, T);
        iy += seg_integral(qy, mu, t, seg_end, 0.0, T);
        const double hit_x = (qx > 0.0 && mu > 0.0) ? t + qx / mu : (qx <= 0.0 ? t : kInf);
        const double hit_y = (qy > 0.0 && mu > 0.0) ? t + qy / mu : (qy <= 0.0 ? t : kInf);
        if (out.tau_y == kInf && hit_y <= seg_end) {
            out.tau_y = hit_y;
            out.diff_at_tau_y = std::max(qx - mu * (hit_y - t), 0.0);
        }
        if (out.tau_x == kInf && hit_x <= seg_end)
            out.tau_x = hit_x;
        const double ex = std::max(qx - mu * (seg_end - t), 0.0);
        const double ey = std::max(qy - mu * (seg_end - t), 0.0);
        // difference at the y-path hit time (it only shrinks after that point)
        if (hit_y <= seg_end && hit_y >= t)
            note_diff(std::max(qx - mu * (hit_y - t), 0.0));
        note_diff(ex - ey);
        if (!arrives)
            break;
        const double jump = draw_jump(model, stream);
        qx = ex + jump;
        qy = ey + jump;
        note_diff(qx - qy);
        t = seg_end;
    }
    out.integral_diff = ix - iy;
    out.both_absorbed = out.tau_x <= T;
    return out;
}

double sample_first_passage(const InputModel& model, double mu, double x, rng::Stream& stream,
                            double cap_factor, double bm_step) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw parameter_error("start level x must be nonnegative and finite");
    require_stable(model, mu);
    if (!(cap_factor > 0.0))
        throw parameter_error("cap_factor must be positive");
    if (x == 0.0)
        return 0.0;
    const double cap = cap_factor * x / (mu - model.lambda);

    if (model.kind == InputKind::BrownianDrift) {
        const double drift = model.lambda - mu;
        const double s2 = model.lambda * model.sigma2;
        const double s = std::sqrt(s2);
        const double h = bm_step;
        double t = 0.0, q = x;
        while (t < cap) {
            const double q_next = q + drift * h + s * std::sqrt(h) * stream.normal();
            if (q_next <= 0.0)
                return std::min(t + h * q / (q - q_next), cap);
            // Brownian-bridge probability of dipping to 0 inside the step
            if (stream.uniform01() < std::exp(-2.0 * q * q_next / (s2 * h)))
                return std::min(t + 0.5 * h, cap);
            q = q_next;
            t += h;
        }
        return cap;
    }

    double t = 0.0, q = x;
    while (t < cap) {
        const double gap = stream.exponential(model.lambda);
        if (q <= mu * gap)
            return std::min(t + q / mu, cap);
        q += draw_jump(model, stream) - mu * gap;
        t += gap;
    }
    return cap;
}

std::vector<MeanCi> transient_mean_curve(const InputModel& model, double mu,
                                         const InitialState& init,
                                         const std::vector<double>& times, const SimConfig& cfg) {
    check_cfg(cfg);
    if (times.empty())
        throw parameter_error("transient_mean_curve needs at least one time point");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i]))
            throw parameter_error("grid times must be nonnegative and finite");
        if (i > 0 && times[i] <= times[i - 1])
            throw parameter_error("grid times must be strictly increasing");
    }
    const double T = std::max(times.back(), 1e-12);
    check_sim_args(mu, T, cfg.bm_step);

    const long n = cfg.replications;
    const std::size_t nt = times.size();
    const long chunk = std::max<long>(1, static_cast<long>(4000000 / nt));

    // Welford accumulators, updated in replication order for determinism.
    std::vector<double> mean(nt, 0.0), m2(nt, 0.0);
    std::vector<double> matrix(static_cast<std::size_t>(chunk) * nt);
    long done = 0;
    while (done < n) {
        const long batch = std::min(chunk, n - done);
        parallel_reps(batch, cfg.jobs, [&](long r) {
            rng::Stream g(cfg.seed, static_cast<std::uint64_t>(done + r));
            std::vector<double> samples(nt, 0.0);
            run_path(model, mu, T, init, g, cfg.bm_step, &times, &samples);
            std::copy(samples.begin(), samples.end(), matrix.begin() + r * nt);
        });
        for (long r = 0; r < batch; ++r) {
            const double count = static_cast<double>(done + r + 1);
            for (std::size_t j = 0; j < nt; ++j) {
                const double v = matrix[r * nt + j];
                const double d = v - mean[j];
                mean[j] += d / count;
                m2[j] += d * (v - mean[j]);
            }
        }
        done += batch;
    }

    const double z = normal_quantile(0.5 * (1.0 + cfg.ci_level));
    std::vector<MeanCi> out(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        const double var = m2[j] / (static_cast<double>(n) - 1.0);
        out[j] = {mean[j], z * std::sqrt(var / static_cast<double>(n))};
    }
    return out;
}

} // namespace levyq
