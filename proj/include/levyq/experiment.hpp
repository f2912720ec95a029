#pragma once

#include "levyq/initial_state.hpp"
#include "levyq/model.hpp"
#include "levyq/simulate.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace levyq {

// Experiment configuration: a single JSON document drives every subcommand, so
// tolerances and grids live in config rather than in code. Unknown keys are
// rejected and a parsed config serializes back to the same canonical document.

struct ModelSpec {
    std::string kind = "mm1"; // mm1 | mpareto | rbm
    double lambda = 1.0;
    double gamma = 3.2;   // mpareto
    double k = 0.6875;    // mpareto
    double sigma2 = 1.0;  // rbm
    InputModel build() const;
};

struct InitSpec {
    std::string type = "deterministic"; // deterministic | exponential | warmup | benchmark
    double value = 0.0;   // deterministic start level
    double mean = 0.0;    // exponential mean
    double burn_in = 0.0; // warmup length
    double factor = 2.0;  // benchmark: factor * benchmark_congestion(model, alpha)

    InitialState build(const InputModel& model, double alpha) const;
    // Representative start level for reports (the x column): the level itself
    // for deterministic/benchmark starts, the mean for exponential starts.
    double start_level(const InputModel& model, double alpha) const;
    std::string label(const InputModel& model, double alpha) const;
};

struct SimSpec {
    std::uint64_t seed = 20240817;
    long replications = 200000;
    double bm_step = 1e-3;
    double ci_level = 0.95;
    int jobs = 1;
    SimConfig build() const;
};

struct CurveSpec {
    double mu_min = 1.1;
    double mu_max = 4.0;
    int points = 30;
};

struct Figure1Spec {
    double mu = 11.0;
    double t_max = 50.0;
    int points = 101;
};

struct GapSpec {
    double alpha = 1.0;
    double t_min = 10.0;
    double t_max = 80.0;
    int points = 4; // geometric grid
};

struct ValidateSpec {
    double u3_scale = 1.0; // fault injection: scales u3 in the analytic targets
};

struct FixtureTolerance {
    double mu = 5.000001e-4; // published values carry three decimals
    double pi_cp = 0.03;
    double pi_pareto = 0.05;
    double pi_rbm = 5e-3;
};

struct ExperimentConfig {
    ModelSpec model;
    std::vector<double> alphas = {0.1, 1.0, 2.0};
    std::vector<double> horizons = {1.0, 2.0, 5.0, 10.0};
    std::vector<InitSpec> initial_states;
    SimSpec sim;
    std::string evaluator = "auto"; // auto | simulation | rbm
    std::string out_dir = "out";
    int table = 0; // 1..4 selects the published layout and enables the fixture diff
    bool fixture_check = true;
    FixtureTolerance fixture_tolerance;
    CurveSpec curves;
    Figure1Spec figure1;
    GapSpec gap;
    ValidateSpec validate;
};

// Parsing and canonical serialization (strict: unknown keys are config errors).
ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);

// Semantic validation of every referenced parameter; throws before any run starts.
void validate_config(const ExperimentConfig& cfg);

// FNV-1a hash of the canonical serialization, for CSV provenance headers.
std::string config_hash(const ExperimentConfig& cfg);

std::string git_revision();

// Presets reproducing the published experiments.
ExperimentConfig table_preset(int table);
ExperimentConfig curves_preset(const std::string& model_kind);
ExperimentConfig figure1_preset();
ExperimentConfig gap_preset();
ExperimentConfig validate_preset();

struct TableRow {
    double alpha;
    double T;
    double x;
    std::string scenario;
    double mu_inf;
    double pi_inf;
    double pi_inf_hw;
    double mu_tilde;
    double pi_tilde;
    double pi_tilde_hw;
    double rel_reduction;
};

// Staffing-rule comparison over the scenario grid. Both rules are priced on
// common random numbers per row; Brownian models default to the noise-free
// evaluator.
std::vector<TableRow> compute_table_rows(const ExperimentConfig& cfg);

struct FixtureReport {
    std::string text;
    int cells_compared = 0;
    int expected_mismatches = 0;
    int unexpected_mismatches = 0;
    int excluded = 0;
};

// Per-cell diff of computed rows against the published table values, honoring
// the defect annotations (annotated cells are reported, not gated).
FixtureReport diff_against_fixtures(const ExperimentConfig& cfg,
                                    const std::vector<TableRow>& rows);

// Subcommand bodies; they write CSVs under cfg.out_dir and log progress.
// Return value is the process exit code (0 ok, 1 fixture-gate failure).
int run_tables(const ExperimentConfig& cfg, std::ostream& log);
int run_curves(const ExperimentConfig& cfg, std::ostream& log);
int run_figure1(const ExperimentConfig& cfg, std::ostream& log);
int run_gap_scaling(const ExperimentConfig& cfg, std::ostream& log);

} // namespace levyq
