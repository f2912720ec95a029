#include "levyq/errors.hpp"
#include "levyq/experiment.hpp"
#include "levyq/validate.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <string>

namespace {

// Flags shared by every subcommand; only flags the user actually passed
// override the preset or config-file values.
struct CommonFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    long replications = 0;
    int jobs = 0;
    std::string out_dir;
    std::string evaluator;
    double bm_step = 0.0;

    CLI::Option* config_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* reps_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* eval_opt = nullptr;
    CLI::Option* step_opt = nullptr;

    void attach(CLI::App* cmd) {
        config_opt = cmd->add_option("--config", config_path,
                                     "JSON config file (replaces the preset)")
                         ->check(CLI::ExistingFile);
        seed_opt = cmd->add_option("--seed", seed, "master seed");
        reps_opt = cmd->add_option("--replications", replications, "Monte-Carlo replications")
                       ->check(CLI::PositiveNumber);
        jobs_opt = cmd->add_option("--jobs", jobs,
                                   "worker threads (0 = hardware concurrency); the "
                                   "result does not depend on this");
        out_opt = cmd->add_option("--out-dir", out_dir, "output directory for CSV files");
        eval_opt = cmd->add_option("--evaluator", evaluator,
                                   "cost evaluator: auto | simulation | rbm")
                       ->check(CLI::IsMember({"auto", "simulation", "rbm"}));
        step_opt = cmd->add_option("--bm-step", bm_step, "Euler step for Brownian paths")
                       ->check(CLI::PositiveNumber);
    }

    levyq::ExperimentConfig resolve(const levyq::ExperimentConfig& preset) const {
        levyq::ExperimentConfig cfg =
            config_opt->count() ? levyq::load_config_file(config_path) : preset;
        if (seed_opt->count())
            cfg.sim.seed = seed;
        if (reps_opt->count())
            cfg.sim.replications = replications;
        if (jobs_opt->count())
            cfg.sim.jobs = jobs;
        if (out_opt->count())
            cfg.out_dir = out_dir;
        if (eval_opt->count())
            cfg.evaluator = evaluator;
        if (step_opt->count())
            cfg.sim.bm_step = bm_step;
        levyq::validate_config(cfg);
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transient-horizon cost corrections and corrected staffing rules "
                 "for Levy-driven queues"};
    app.set_version_flag("--version", std::string("levyq 1.0.0 (") + levyq::git_revision() + ")");
    app.require_subcommand(1);

    CLI::App* tables = app.add_subcommand(
        "tables", "Staffing-rule comparison over an (alpha, horizon, start) grid");
    int table_id = 0;
    CommonFlags tables_flags;
    CLI::Option* table_opt =
        tables->add_option("--table", table_id, "published table preset (1..4)")
            ->check(CLI::Range(1, 4));
    bool fixture_check = true;
    CLI::Option* fixture_opt =
        tables->add_flag("--fixture-check,!--no-fixture-check", fixture_check,
                         "diff results against the published values (exit 1 on "
                         "unexplained mismatch)");
    tables_flags.attach(tables);

    CLI::App* curves = app.add_subcommand("curves", "Finite-horizon cost curves C_T(mu)");
    std::string curves_model = "mm1";
    CommonFlags curves_flags;
    curves->add_option("--model", curves_model, "input model: mm1 | mpareto | rbm")
        ->check(CLI::IsMember({"mm1", "mpareto", "rbm"}));
    curves_flags.attach(curves);

    CLI::App* figure1 = app.add_subcommand(
        "figure1", "Transient mean workload E[Q(t)] from several starting states");
    CommonFlags figure1_flags;
    figure1_flags.attach(figure1);

    CLI::App* gap = app.add_subcommand(
        "gap-scaling", "Optimality gap of the stationary rule as the horizon grows");
    CommonFlags gap_flags;
    gap_flags.attach(gap);

    CLI::App* validate = app.add_subcommand(
        "validate", "Monte-Carlo cross-checks of the analytic layer");
    CommonFlags validate_flags;
    double u3_scale = 1.0;
    CLI::Option* u3_opt = validate->add_option(
        "--u3-scale", u3_scale,
        "fault injection: scale the third moment used by the analytic targets");
    validate_flags.attach(validate);

    try {
        app.parse(argc, argv);

        if (tables->parsed()) {
            if (tables_flags.config_opt->count() && table_opt->count())
                throw levyq::config_error("--table conflicts with --config; put the table "
                                          "number in the config file");
            if (!tables_flags.config_opt->count() && !table_opt->count())
                throw levyq::config_error("tables needs either --table or --config");
            levyq::ExperimentConfig cfg = tables_flags.resolve(
                table_opt->count() ? levyq::table_preset(table_id) : levyq::ExperimentConfig{});
            if (fixture_opt->count())
                cfg.fixture_check = fixture_check;
            return levyq::run_tables(cfg, std::cout);
        }
        if (curves->parsed())
            return levyq::run_curves(curves_flags.resolve(levyq::curves_preset(curves_model)),
                                     std::cout);
        if (figure1->parsed())
            return levyq::run_figure1(figure1_flags.resolve(levyq::figure1_preset()), std::cout);
        if (gap->parsed())
            return levyq::run_gap_scaling(gap_flags.resolve(levyq::gap_preset()), std::cout);
        if (validate->parsed()) {
            levyq::ExperimentConfig cfg = validate_flags.resolve(levyq::validate_preset());
            if (u3_opt->count())
                cfg.validate.u3_scale = u3_scale;
            return levyq::run_validate(cfg, std::cout);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const levyq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
