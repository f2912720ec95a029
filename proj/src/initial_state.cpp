#include "levyq/initial_state.hpp"
#include "levyq/errors.hpp"

#include <cmath>

namespace levyq {

InitialState InitialState::deterministic(double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw parameter_error("deterministic initial workload must be nonnegative and finite");
    return InitialState(Kind::Deterministic, x);
}

InitialState InitialState::exponential(double mean) {
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw parameter_error("exponential initial workload needs a positive finite mean");
    return InitialState(Kind::Exponential, mean);
}

InitialState InitialState::warmup(double burn_in) {
    if (!(burn_in > 0.0) || !std::isfinite(burn_in))
        throw parameter_error("warm-up burn-in length must be positive and finite");
    return InitialState(Kind::Warmup, burn_in);
}

double InitialState::mean() const {
    switch (kind_) {
    case Kind::Deterministic:
        return value_;
    case Kind::Exponential:
        return value_;
    case Kind::Warmup:
        break;
    }
    throw unsupported_analytics("warm-up initial state has no closed-form moments");
}

double InitialState::second_moment() const {
    switch (kind_) {
    case Kind::Deterministic:
        return value_ * value_;
    case Kind::Exponential:
        return 2.0 * value_ * value_;
    case Kind::Warmup:
        break;
    }
    throw unsupported_analytics("warm-up initial state has no closed-form moments");
}

} // namespace levyq
