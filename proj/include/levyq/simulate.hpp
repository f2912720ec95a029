#pragma once

#include "levyq/initial_state.hpp"
#include "levyq/model.hpp"
#include "levyq/rng.hpp"
#include "levyq/stats.hpp"

#include <cstdint>
#include <vector>

namespace levyq {

struct SimConfig {
    std::uint64_t seed = 20240817;
    long replications = 200000;
    double bm_step = 1e-3;  // Euler step is bm_step * min(1, T)
    double ci_level = 0.95;
    int jobs = 1;           // worker threads; 0 picks hardware concurrency
};

struct PathSummary {
    double integral_q;       // int_0^T Q(t) dt
    double final_q;          // Q(T)
    double first_empty_time; // first t in [0, T] with Q(t) = 0; +infinity if none
    bool hit_empty;
};

struct CostEstimate {
    double mean;
    double half_width;
    long replications;
    std::uint64_t seed;
};

struct CoupledSummary {
    double tau_y;          // first zero of the path started at y; +infinity if not in [0, T]
    double tau_x;          // first zero of the path started at x
    double integral_diff;  // int_0^T (Q^x - Q^y) dt
    double diff_at_tau_y;  // Y at the instant the lower path first empties; the
                           // difference is constant (= x - y) up to that time
    bool staircase_ok;     // difference never increased along the path
    bool both_absorbed;    // tau_x <= T
};

// One path of the reflected queue. Compound-Poisson inputs are simulated exactly
// event by event (closed-form drain between jumps); Brownian input uses an Euler
// scheme with reflection by truncation, which carries an O(sqrt(step)) boundary
// bias.
PathSummary simulate_path(const InputModel& model, double mu, double T, const InitialState& init,
                          rng::Stream& stream, double bm_step = 1e-3);

// Monte-Carlo estimate of C_T(mu) = E[(1/T) int_0^T Q dt]. Deterministic for a
// fixed (seed, replications, bm_step) no matter how many jobs run.
CostEstimate estimate_ct(const InputModel& model, double mu, double T, const InitialState& init,
                         const SimConfig& cfg);

// Same, for several service rates against common random numbers: replication r
// sees identical input randomness at every mu.
std::vector<CostEstimate> estimate_ct_multi(const InputModel& model, const std::vector<double>& mus,
                                            double T, const InitialState& init,
                                            const SimConfig& cfg);

// Two reflected paths driven by the same input, started at x >= y >= 0.
CoupledSummary coupled_difference(const InputModel& model, double mu, double T, double x, double y,
                                  rng::Stream& stream, double bm_step = 1e-3);

// First time the workload started at x hits zero, censored at
// cap_factor * x / (mu - lambda). Exact for compound-Poisson input; discretized
// (Euler with a per-step Brownian-bridge crossing check) for Brownian input.
double sample_first_passage(const InputModel& model, double mu, double x, rng::Stream& stream,
                            double cap_factor = 1e3, double bm_step = 1e-3);

// E[Q(t)] with confidence half-widths on a grid of times, estimated from common
// replications (one path serves every grid point).
std::vector<MeanCi> transient_mean_curve(const InputModel& model, double mu,
                                         const InitialState& init,
                                         const std::vector<double>& times, const SimConfig& cfg);

} // namespace levyq
