#pragma once

#include "levyq/experiment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace levyq {

struct CheckResult {
    std::string name;
    bool pass;
    double measured;  // deviation (or violation magnitude) the check observed
    double tolerance; // the bound it was held against
    std::string detail;
};

// Monte-Carlo cross-validation of the analytic layer on fixed canonical models.
// Tolerances follow max(floor, 3 * CI half-width); only replication counts,
// seed and jobs are taken from cfg.sim. Setting cfg.validate.u3_scale != 1
// perturbs the third moment that enters the analytic targets, which must trip
// the checks that depend on it (a fault injection for the suite itself).
std::vector<CheckResult> run_validation_suite(const ExperimentConfig& cfg);

// Prints one line per check; returns 0 when all pass, 1 otherwise.
int run_validate(const ExperimentConfig& cfg, std::ostream& log);

} // namespace levyq
