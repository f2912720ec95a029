#pragma once

namespace levyq {

// Initial workload Q(0). Deterministic and exponential starts carry closed-form
// moments; a warm-up start (endpoint of an auxiliary run from empty) is only
// meaningful to the simulator and is rejected by the analytic routines.
class InitialState {
public:
    enum class Kind { Deterministic, Exponential, Warmup };

    static InitialState deterministic(double x);
    static InitialState exponential(double mean);
    static InitialState warmup(double burn_in);

    Kind kind() const { return kind_; }

    // Parameter in the sense of the kind: x, the mean, or the burn-in length.
    double value() const { return value_; }

    double mean() const;          // E[Q(0)]
    double second_moment() const; // E[Q(0)^2]

private:
    InitialState(Kind kind, double value) : kind_(kind), value_(value) {}
    Kind kind_;
    double value_;
};

} // namespace levyq
