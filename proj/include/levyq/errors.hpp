#pragma once

#include <stdexcept>
#include <string>

namespace levyq {

// Base class for all errors thrown by the library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid model or routine parameter (nonpositive rate, bad tail index, ...).
struct parameter_error : error {
    explicit parameter_error(const std::string& what) : error(what) {}
};

// Jump-size law does not have unit mean.
struct normalization_error : parameter_error {
    explicit normalization_error(const std::string& what) : parameter_error(what) {}
};

// Requested quantity needs a stable queue (mu > lambda) and the margin is too small.
struct stability_error : error {
    explicit stability_error(const std::string& what) : error(what) {}
};

// Argument outside the domain of a transform or distribution function.
struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

// Closed-form expression requested for an initial state that has none.
struct unsupported_analytics : error {
    explicit unsupported_analytics(const std::string& what) : error(what) {}
};

// Malformed experiment configuration or CLI usage.
struct config_error : error {
    explicit config_error(const std::string& what) : error(what) {}
};

// Internal consistency check failed (points at an implementation bug, not bad input).
struct diagnostic_error : error {
    explicit diagnostic_error(const std::string& what) : error(what) {}
};

} // namespace levyq
