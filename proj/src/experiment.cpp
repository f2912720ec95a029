#include "levyq/experiment.hpp"

#include "levyq/correction.hpp"
#include "levyq/errors.hpp"
#include "levyq/fixtures.hpp"
#include "levyq/optimize.hpp"
#include "levyq/rbm_eval.hpp"
#include "levyq/stationary.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#ifndef LEVYQ_GIT_REV
#define LEVYQ_GIT_REV "unknown"
#endif

namespace levyq {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw config_error("section '" + section + "' must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            known = known || item.key() == key;
        if (!known)
            throw config_error("unknown key '" + item.key() + "' in section '" + section + "'");
    }
}

ModelSpec model_from_json(const json& j) {
    ModelSpec m;
    if (j.contains("kind"))
        m.kind = j.at("kind").get<std::string>();
    if (m.kind == "mm1")
        check_keys(j, "model", {"kind", "lambda"});
    else if (m.kind == "mpareto")
        check_keys(j, "model", {"kind", "lambda", "gamma", "k"});
    else if (m.kind == "rbm")
        check_keys(j, "model", {"kind", "lambda", "sigma2"});
    else
        throw config_error("model.kind must be one of mm1, mpareto, rbm");
    if (j.contains("lambda"))
        m.lambda = j.at("lambda").get<double>();
    if (j.contains("gamma"))
        m.gamma = j.at("gamma").get<double>();
    if (j.contains("k"))
        m.k = j.at("k").get<double>();
    if (j.contains("sigma2"))
        m.sigma2 = j.at("sigma2").get<double>();
    return m;
}

json model_to_json(const ModelSpec& m) {
    json j{{"kind", m.kind}, {"lambda", m.lambda}};
    if (m.kind == "mpareto") {
        j["gamma"] = m.gamma;
        j["k"] = m.k;
    } else if (m.kind == "rbm") {
        j["sigma2"] = m.sigma2;
    }
    return j;
}

InitSpec init_from_json(const json& j) {
    InitSpec s;
    if (j.contains("type"))
        s.type = j.at("type").get<std::string>();
    if (s.type == "deterministic") {
        check_keys(j, "initial_states[]", {"type", "value"});
        if (j.contains("value"))
            s.value = j.at("value").get<double>();
    } else if (s.type == "exponential") {
        check_keys(j, "initial_states[]", {"type", "mean"});
        s.mean = j.at("mean").get<double>();
    } else if (s.type == "warmup") {
        check_keys(j, "initial_states[]", {"type", "burn_in"});
        s.burn_in = j.at("burn_in").get<double>();
    } else if (s.type == "benchmark") {
        check_keys(j, "initial_states[]", {"type", "factor"});
        if (j.contains("factor"))
            s.factor = j.at("factor").get<double>();
    } else {
        throw config_error(
            "initial state type must be one of deterministic, exponential, warmup, benchmark");
    }
    return s;
}

json init_to_json(const InitSpec& s) {
    if (s.type == "deterministic")
        return json{{"type", s.type}, {"value", s.value}};
    if (s.type == "exponential")
        return json{{"type", s.type}, {"mean", s.mean}};
    if (s.type == "warmup")
        return json{{"type", s.type}, {"burn_in", s.burn_in}};
    return json{{"type", s.type}, {"factor", s.factor}};
}

ExperimentConfig config_from_json(const json& j) {
    check_keys(j, "config",
               {"model", "alphas", "horizons", "initial_states", "sim", "evaluator", "out_dir",
                "table", "fixture_check", "fixture_tolerance", "curves", "figure1", "gap",
                "validate"});
    ExperimentConfig cfg;
    cfg.initial_states.clear();
    if (j.contains("model"))
        cfg.model = model_from_json(j.at("model"));
    if (j.contains("alphas"))
        cfg.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("horizons"))
        cfg.horizons = j.at("horizons").get<std::vector<double>>();
    if (j.contains("initial_states")) {
        if (!j.at("initial_states").is_array())
            throw config_error("initial_states must be an array");
        for (const json& e : j.at("initial_states"))
            cfg.initial_states.push_back(init_from_json(e));
    }
    if (j.contains("sim")) {
        const json& s = j.at("sim");
        check_keys(s, "sim", {"seed", "replications", "bm_step", "ci_level", "jobs"});
        if (s.contains("seed"))
            cfg.sim.seed = s.at("seed").get<std::uint64_t>();
        if (s.contains("replications"))
            cfg.sim.replications = s.at("replications").get<long>();
        if (s.contains("bm_step"))
            cfg.sim.bm_step = s.at("bm_step").get<double>();
        if (s.contains("ci_level"))
            cfg.sim.ci_level = s.at("ci_level").get<double>();
        if (s.contains("jobs"))
            cfg.sim.jobs = s.at("jobs").get<int>();
    }
    if (j.contains("evaluator"))
        cfg.evaluator = j.at("evaluator").get<std::string>();
    if (j.contains("out_dir"))
        cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("table"))
        cfg.table = j.at("table").get<int>();
    if (j.contains("fixture_check"))
        cfg.fixture_check = j.at("fixture_check").get<bool>();
    if (j.contains("fixture_tolerance")) {
        const json& t = j.at("fixture_tolerance");
        check_keys(t, "fixture_tolerance", {"mu", "pi_cp", "pi_pareto", "pi_rbm"});
        if (t.contains("mu"))
            cfg.fixture_tolerance.mu = t.at("mu").get<double>();
        if (t.contains("pi_cp"))
            cfg.fixture_tolerance.pi_cp = t.at("pi_cp").get<double>();
        if (t.contains("pi_pareto"))
            cfg.fixture_tolerance.pi_pareto = t.at("pi_pareto").get<double>();
        if (t.contains("pi_rbm"))
            cfg.fixture_tolerance.pi_rbm = t.at("pi_rbm").get<double>();
    }
    if (j.contains("curves")) {
        const json& c = j.at("curves");
        check_keys(c, "curves", {"mu_min", "mu_max", "points"});
        if (c.contains("mu_min"))
            cfg.curves.mu_min = c.at("mu_min").get<double>();
        if (c.contains("mu_max"))
            cfg.curves.mu_max = c.at("mu_max").get<double>();
        if (c.contains("points"))
            cfg.curves.points = c.at("points").get<int>();
    }
    if (j.contains("figure1")) {
        const json& f = j.at("figure1");
        check_keys(f, "figure1", {"mu", "t_max", "points"});
        if (f.contains("mu"))
            cfg.figure1.mu = f.at("mu").get<double>();
        if (f.contains("t_max"))
            cfg.figure1.t_max = f.at("t_max").get<double>();
        if (f.contains("points"))
            cfg.figure1.points = f.at("points").get<int>();
    }
    if (j.contains("gap")) {
        const json& g = j.at("gap");
        check_keys(g, "gap", {"alpha", "t_min", "t_max", "points"});
        if (g.contains("alpha"))
            cfg.gap.alpha = g.at("alpha").get<double>();
        if (g.contains("t_min"))
            cfg.gap.t_min = g.at("t_min").get<double>();
        if (g.contains("t_max"))
            cfg.gap.t_max = g.at("t_max").get<double>();
        if (g.contains("points"))
            cfg.gap.points = g.at("points").get<int>();
    }
    if (j.contains("validate")) {
        const json& v = j.at("validate");
        check_keys(v, "validate", {"u3_scale"});
        if (v.contains("u3_scale"))
            cfg.validate.u3_scale = v.at("u3_scale").get<double>();
    }
    if (cfg.initial_states.empty() && !j.contains("initial_states")) {
        cfg.initial_states.push_back(InitSpec{});
        InitSpec bench;
        bench.type = "benchmark";
        cfg.initial_states.push_back(bench);
    }
    validate_config(cfg);
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json inits = json::array();
    for (const InitSpec& s : cfg.initial_states)
        inits.push_back(init_to_json(s));
    return json{
        {"model", model_to_json(cfg.model)},
        {"alphas", cfg.alphas},
        {"horizons", cfg.horizons},
        {"initial_states", inits},
        {"sim",
         {{"seed", cfg.sim.seed},
          {"replications", cfg.sim.replications},
          {"bm_step", cfg.sim.bm_step},
          {"ci_level", cfg.sim.ci_level},
          {"jobs", cfg.sim.jobs}}},
        {"evaluator", cfg.evaluator},
        {"out_dir", cfg.out_dir},
        {"table", cfg.table},
        {"fixture_check", cfg.fixture_check},
        {"fixture_tolerance",
         {{"mu", cfg.fixture_tolerance.mu},
          {"pi_cp", cfg.fixture_tolerance.pi_cp},
          {"pi_pareto", cfg.fixture_tolerance.pi_pareto},
          {"pi_rbm", cfg.fixture_tolerance.pi_rbm}}},
        {"curves",
         {{"mu_min", cfg.curves.mu_min},
          {"mu_max", cfg.curves.mu_max},
          {"points", cfg.curves.points}}},
        {"figure1",
         {{"mu", cfg.figure1.mu},
          {"t_max", cfg.figure1.t_max},
          {"points", cfg.figure1.points}}},
        {"gap",
         {{"alpha", cfg.gap.alpha},
          {"t_min", cfg.gap.t_min},
          {"t_max", cfg.gap.t_max},
          {"points", cfg.gap.points}}},
        {"validate", {{"u3_scale", cfg.validate.u3_scale}}},
    };
}

// True when the evaluator resolves to the noise-free transient integrals.
bool uses_rbm_evaluator(const ExperimentConfig& cfg, const InputModel& model) {
    if (cfg.evaluator == "rbm")
        return true;
    if (cfg.evaluator == "simulation")
        return false;
    return model.kind == InputKind::BrownianDrift;
}

std::ofstream open_csv(const ExperimentConfig& cfg, const std::string& name, std::ostream& log,
                       std::string* path_out = nullptr) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec)
        throw error("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
    const std::string path = (fs::path(cfg.out_dir) / name).string();
    std::ofstream out(path, std::ios::binary); // fixed newlines on every platform
    if (!out)
        throw error("cannot write '" + path + "'");
    out << "# revision: " << git_revision() << "\n";
    out << "# seed: " << cfg.sim.seed << "\n";
    out << "# config: " << config_hash(cfg) << "\n";
    log << "writing " << path << "\n";
    if (path_out)
        *path_out = path;
    return out;
}

double pi_fixture_tolerance(const ExperimentConfig& cfg, const InputModel& model, bool rbm_eval,
                            double half_width) {
    if (rbm_eval)
        return cfg.fixture_tolerance.pi_rbm;
    const double floor = model.kind == InputKind::CompoundPoissonPareto
                             ? cfg.fixture_tolerance.pi_pareto
                             : cfg.fixture_tolerance.pi_cp;
    return std::max(floor, 3.0 * half_width);
}

std::string defect_note(const fixtures::TableCell& cell, const InputModel& model) {
    char buf[128];
    if (cell.defect == fixtures::Defect::CopiedEmptyStartColumn) {
        const double hypothesis =
            corrected_mu(model, cell.alpha, cell.T, InitialState::deterministic(0.0));
        std::snprintf(buf, sizeof buf, "printed repeats the x=0 column (rule for x=0: %.3f)",
                      hypothesis);
        return buf;
    }
    if (cell.defect == fixtures::Defect::HalvedStart) {
        const double hypothesis =
            corrected_mu(model, cell.alpha, cell.T, InitialState::deterministic(cell.x / 2.0));
        std::snprintf(buf, sizeof buf, "printed matches half the start level (rule for x/2: %.3f)",
                      hypothesis);
        return buf;
    }
    if (cell.defect == fixtures::Defect::MissingStartSliver) {
        std::snprintf(buf, sizeof buf,
                      "printed costs omit the initial [0,0.01) sliver x h/T = %.4f",
                      0.01 * cell.x / cell.T);
        return buf;
    }
    if (cell.defect == fixtures::Defect::HalvedHorizonCost) {
        std::snprintf(buf, sizeof buf,
                      "printed cost of the corrected rule was evaluated over T/2 = %g",
                      cell.T / 2.0);
        return buf;
    }
    return "";
}

} // namespace

InputModel ModelSpec::build() const {
    if (kind == "mm1")
        return make_mm1(lambda);
    if (kind == "mpareto")
        return make_mpareto(lambda, gamma, k);
    if (kind == "rbm")
        return make_rbm(lambda, sigma2);
    throw config_error("model.kind must be one of mm1, mpareto, rbm");
}

InitialState InitSpec::build(const InputModel& model, double alpha) const {
    if (type == "deterministic")
        return InitialState::deterministic(value);
    if (type == "exponential")
        return InitialState::exponential(mean);
    if (type == "warmup")
        return InitialState::warmup(burn_in);
    if (type == "benchmark")
        return InitialState::deterministic(factor * benchmark_congestion(model, alpha));
    throw config_error("unknown initial state type '" + type + "'");
}

double InitSpec::start_level(const InputModel& model, double alpha) const {
    if (type == "deterministic")
        return value;
    if (type == "exponential")
        return mean;
    if (type == "benchmark")
        return factor * benchmark_congestion(model, alpha);
    return 0.0; // warmup starts empty
}

std::string InitSpec::label(const InputModel& model, double alpha) const {
    if (type == "deterministic")
        return "x" + fmt_g(value);
    if (type == "exponential")
        return "exp" + fmt_g(mean);
    if (type == "warmup")
        return "warmup" + fmt_g(burn_in);
    return "bench" + fmt_g(start_level(model, alpha));
}

SimConfig SimSpec::build() const {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.replications = replications;
    cfg.bm_step = bm_step;
    cfg.ci_level = ci_level;
    cfg.jobs = jobs;
    return cfg;
}

ExperimentConfig parse_config(const std::string& json_text) {
    try {
        return config_from_json(json::parse(json_text));
    } catch (const json::exception& e) {
        throw config_error(std::string("invalid config JSON: ") + e.what());
    }
}

std::string serialize_config(const ExperimentConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    const InputModel model = cfg.model.build();
    if (cfg.alphas.empty() || cfg.horizons.empty() || cfg.initial_states.empty())
        throw config_error("scenario grid is empty (alphas, horizons and initial_states "
                           "must all be non-empty)");
    for (double a : cfg.alphas)
        if (!(a > 0.0) || !std::isfinite(a))
            throw config_error("alphas must be positive and finite");
    for (double t : cfg.horizons)
        if (!(t > 0.0) || !std::isfinite(t))
            throw config_error("horizons must be positive and finite");
    for (const InitSpec& s : cfg.initial_states)
        for (double a : cfg.alphas)
            (void)s.build(model, a); // factory validation
    if (cfg.sim.replications < 2)
        throw config_error("sim.replications must be at least 2");
    if (!(cfg.sim.bm_step > 0.0) || !(cfg.sim.bm_step <= 0.1))
        throw config_error("sim.bm_step must lie in (0, 0.1]");
    if (!(cfg.sim.ci_level > 0.0) || !(cfg.sim.ci_level < 1.0))
        throw config_error("sim.ci_level must lie in (0, 1)");
    if (cfg.sim.jobs < 0)
        throw config_error("sim.jobs must be nonnegative (0 = hardware concurrency)");
    if (cfg.evaluator != "auto" && cfg.evaluator != "simulation" && cfg.evaluator != "rbm")
        throw config_error("evaluator must be one of auto, simulation, rbm");
    if (cfg.evaluator == "rbm" && model.kind != InputKind::BrownianDrift)
        throw config_error("the rbm evaluator needs a Brownian input model");
    if (cfg.table < 0 || cfg.table > 4)
        throw config_error("table must be 0 (free-form) or 1..4");
    if (cfg.curves.points < 2 || !(cfg.curves.mu_min < cfg.curves.mu_max) ||
        !(cfg.curves.mu_min >= 0.0))
        throw config_error("curves grid needs 0 <= mu_min < mu_max and at least 2 points");
    if (cfg.figure1.points < 2 || !(cfg.figure1.t_max > 0.0) || !(cfg.figure1.mu >= 0.0))
        throw config_error("figure1 needs t_max > 0, mu >= 0 and at least 2 points");
    if (cfg.gap.points < 2 || !(cfg.gap.t_min > 0.0) || !(cfg.gap.t_min < cfg.gap.t_max) ||
        !(cfg.gap.alpha > 0.0))
        throw config_error("gap grid needs 0 < t_min < t_max, alpha > 0 and at least 2 points");
    if (!(cfg.validate.u3_scale > 0.0))
        throw config_error("validate.u3_scale must be positive");
}

std::string config_hash(const ExperimentConfig& cfg) {
    ExperimentConfig canon = cfg;
    canon.sim.jobs = 1;    // scheduling does not affect results
    canon.out_dir = "out"; // nor does the destination directory
    const std::string text = serialize_config(canon);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a-%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string git_revision() { return LEVYQ_GIT_REV; }

ExperimentConfig table_preset(int table) {
    ExperimentConfig cfg;
    switch (table) {
    case 1:
        cfg.model.kind = "mm1";
        break;
    case 2:
        cfg.model.kind = "mpareto";
        break;
    case 3:
        cfg.model.kind = "rbm";
        cfg.model.sigma2 = 1.0;
        break;
    case 4:
        cfg.model.kind = "rbm";
        cfg.model.sigma2 = 4.0;
        break;
    default:
        throw config_error("table preset must be 1..4");
    }
    cfg.table = table;
    InitSpec empty;
    InitSpec bench;
    bench.type = "benchmark";
    cfg.initial_states = {empty, bench};
    validate_config(cfg);
    return cfg;
}

ExperimentConfig curves_preset(const std::string& model_kind) {
    ExperimentConfig cfg;
    cfg.model.kind = model_kind;
    cfg.horizons = {2.0, 5.0, 10.0};
    InitSpec empty;
    InitSpec high;
    high.value = 2.5;
    cfg.initial_states = {empty, high};
    cfg.sim.replications = 20000;
    validate_config(cfg);
    return cfg;
}

ExperimentConfig figure1_preset() {
    ExperimentConfig cfg;
    cfg.model.lambda = 10.0;
    InitSpec x0, x10, x20, exp15;
    x10.value = 10.0;
    x20.value = 20.0;
    exp15.type = "exponential";
    exp15.mean = 15.0;
    cfg.initial_states = {x0, x10, x20, exp15};
    cfg.sim.replications = 20000;
    validate_config(cfg);
    return cfg;
}

ExperimentConfig gap_preset() {
    ExperimentConfig cfg;
    InitSpec empty;
    cfg.initial_states = {empty};
    validate_config(cfg);
    return cfg;
}

ExperimentConfig validate_preset() {
    ExperimentConfig cfg;
    InitSpec empty;
    cfg.initial_states = {empty};
    cfg.sim.replications = 100000;
    validate_config(cfg);
    return cfg;
}

std::vector<TableRow> compute_table_rows(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const InputModel model = cfg.model.build();
    const bool noise_free = uses_rbm_evaluator(cfg, model);
    const SimConfig sim = cfg.sim.build();
    if (noise_free)
        for (const InitSpec& spec : cfg.initial_states)
            if (spec.type == "exponential" || spec.type == "warmup")
                throw config_error("the noise-free evaluator needs deterministic starts");

    std::vector<TableRow> rows;
    rows.reserve(cfg.alphas.size() * cfg.horizons.size() * cfg.initial_states.size());
    for (double alpha : cfg.alphas) {
        for (double T : cfg.horizons) {
            for (const InitSpec& spec : cfg.initial_states) {
                const InitialState init = spec.build(model, alpha);
                TableRow row;
                row.alpha = alpha;
                row.T = T;
                row.x = spec.start_level(model, alpha);
                row.scenario = spec.label(model, alpha);
                row.mu_inf = mu_star_infinity(model, alpha);
                row.mu_tilde = corrected_mu(model, alpha, T, init);
                if (noise_free) {
                    const double ci = rbm_ct(rbm_spec(model, row.mu_inf, row.x), T);
                    const double ct = rbm_ct(rbm_spec(model, row.mu_tilde, row.x), T);
                    row.pi_inf = ci + alpha * row.mu_inf;
                    row.pi_tilde = ct + alpha * row.mu_tilde;
                    row.pi_inf_hw = 0.0;
                    row.pi_tilde_hw = 0.0;
                } else {
                    const auto est =
                        estimate_ct_multi(model, {row.mu_inf, row.mu_tilde}, T, init, sim);
                    row.pi_inf = est[0].mean + alpha * row.mu_inf;
                    row.pi_tilde = est[1].mean + alpha * row.mu_tilde;
                    row.pi_inf_hw = est[0].half_width;
                    row.pi_tilde_hw = est[1].half_width;
                }
                row.rel_reduction = (row.pi_inf - row.pi_tilde) / row.pi_inf;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

FixtureReport diff_against_fixtures(const ExperimentConfig& cfg,
                                    const std::vector<TableRow>& rows) {
    FixtureReport report;
    std::ostringstream out;
    if (cfg.table < 1 || cfg.table > 4) {
        report.text = "fixture diff skipped: config is not one of the published tables\n";
        return report;
    }
    const std::vector<fixtures::TableCell> cells = fixtures::cells_for_table(cfg.table);
    if (cells.size() != rows.size()) {
        report.text = "fixture diff skipped: scenario grid does not match the published table\n";
        return report;
    }
    const InputModel model = cfg.model.build();
    const bool noise_free = uses_rbm_evaluator(cfg, model);

    out << "fixture diff for table " << cfg.table << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const fixtures::TableCell& cell = cells[i];
        const TableRow& row = rows[i];
        if (std::abs(cell.alpha - row.alpha) > 1e-12 || std::abs(cell.T - row.T) > 1e-12 ||
            std::abs(cell.x - row.x) > 1e-9) {
            report.text = "fixture diff skipped: scenario grid does not match the published "
                          "table\n";
            report.cells_compared = 0;
            report.expected_mismatches = 0;
            report.unexpected_mismatches = 0;
            report.excluded = 0;
            return report;
        }
        out << "alpha=" << fmt_g(cell.alpha) << " T=" << fmt_g(cell.T) << " x=" << fmt_g(cell.x)
            << ": ";
        if (cell.defect == fixtures::Defect::DuplicatedBlock) {
            out << "excluded: suspected paper erratum (repeats the alpha=2 block)\n";
            ++report.excluded;
            continue;
        }
        ++report.cells_compared;

        const double mu_tol = cfg.fixture_tolerance.mu;
        const double pi_inf_tol = pi_fixture_tolerance(cfg, model, noise_free, row.pi_inf_hw);
        const double pi_tilde_tol = pi_fixture_tolerance(cfg, model, noise_free, row.pi_tilde_hw);
        const bool annotated = cell.defect != fixtures::Defect::None;
        // rate-rule defects excuse the printed mu_tilde column (and everything
        // downstream of it); the sliver defect shifts both printed costs by a
        // known amount instead
        const bool rate_defect = cell.defect == fixtures::Defect::CopiedEmptyStartColumn ||
                                 cell.defect == fixtures::Defect::HalvedStart;
        // the half-horizon slip affects only the corrected rule's printed cost
        const bool cost_defect = cell.defect == fixtures::Defect::HalvedHorizonCost;
        const double sliver = cell.defect == fixtures::Defect::MissingStartSliver
                                  ? 0.01 * cell.x / cell.T
                                  : 0.0;

        auto report_value = [&](const char* name, double computed, double printed, double tol,
                                bool excusable, double adjust) {
            const double dev = std::abs(computed - printed);
            const double adjusted_dev = std::abs(computed - printed - adjust);
            if (dev <= tol) {
                out << name << " ok (dev " << fmt_g(dev) << ")";
            } else if (adjust != 0.0 && adjusted_dev <= tol) {
                out << name << " expected-mismatch (printed " << fmt_g(printed) << ", computed "
                    << fmt_g(computed) << ", dev after sliver " << fmt_g(adjusted_dev) << ")";
                ++report.expected_mismatches;
            } else if (excusable) {
                out << name << " expected-mismatch (printed " << fmt_g(printed) << ", computed "
                    << fmt_g(computed) << ")";
                ++report.expected_mismatches;
            } else {
                out << name << " MISMATCH (printed " << fmt_g(printed) << ", computed "
                    << fmt_g(computed) << ", tol " << fmt_g(tol) << ")";
                ++report.unexpected_mismatches;
            }
            out << "; ";
        };

        report_value("mu_inf", row.mu_inf, cell.mu_inf, mu_tol, false, 0.0);
        report_value("pi_inf", row.pi_inf, cell.pi_inf, pi_inf_tol, false, sliver);
        report_value("mu_tilde", row.mu_tilde, cell.mu_tilde, mu_tol, rate_defect, 0.0);
        // the printed cost depends on the printed rate, so it inherits the annotation
        report_value("pi_tilde", row.pi_tilde, cell.pi_tilde, pi_tilde_tol,
                     rate_defect || cost_defect, sliver);
        const double rel_tol =
            1e-3 + (pi_inf_tol + pi_tilde_tol) / std::max(cell.pi_inf, 1e-9);
        report_value("rel", row.rel_reduction, cell.rel_reduction, rel_tol,
                     rate_defect || cost_defect, 0.0);
        if (annotated) {
            const std::string note = defect_note(cell, model);
            if (!note.empty())
                out << "[" << note << "]";
        }
        out << "\n";
    }
    out << "cells compared: " << report.cells_compared
        << ", excluded: " << report.excluded
        << ", expected mismatches: " << report.expected_mismatches
        << ", unexpected mismatches: " << report.unexpected_mismatches << "\n";
    report.text = out.str();
    return report;
}

int run_tables(const ExperimentConfig& cfg, std::ostream& log) {
    const std::vector<TableRow> rows = compute_table_rows(cfg);
    const std::string base = cfg.table >= 1 ? "table" + std::to_string(cfg.table) : "tables";
    std::ofstream csv = open_csv(cfg, base + ".csv", log);
    csv << "alpha,T,x,mu_inf,pi_mu_inf,pi_mu_inf_ci,mu_tilde,pi_mu_tilde,pi_mu_tilde_ci,"
           "rel_reduction\n";
    for (const TableRow& r : rows)
        csv << fmt_g(r.alpha) << "," << fmt_g(r.T) << "," << fmt(r.x) << "," << fmt(r.mu_inf)
            << "," << fmt(r.pi_inf) << "," << fmt(r.pi_inf_hw) << "," << fmt(r.mu_tilde) << ","
            << fmt(r.pi_tilde) << "," << fmt(r.pi_tilde_hw) << "," << fmt(r.rel_reduction)
            << "\n";
    csv.close();
    if (!csv)
        throw error("failed writing table CSV");

    if (!cfg.fixture_check)
        return 0;
    const FixtureReport report = diff_against_fixtures(cfg, rows);
    std::ofstream diff = open_csv(cfg, base + "_fixture_diff.txt", log);
    diff << report.text;
    diff.close();
    log << report.text;
    return report.unexpected_mismatches > 0 ? 1 : 0;
}

int run_curves(const ExperimentConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    const InputModel model = cfg.model.build();
    const bool noise_free = uses_rbm_evaluator(cfg, model);
    const SimConfig sim = cfg.sim.build();

    std::vector<double> mus(cfg.curves.points);
    for (int i = 0; i < cfg.curves.points; ++i)
        mus[i] = cfg.curves.mu_min +
                 (cfg.curves.mu_max - cfg.curves.mu_min) * i / (cfg.curves.points - 1);
    const double stable_floor = model.lambda * (1.0 + 1e-6);

    for (const InitSpec& spec : cfg.initial_states) {
        if (spec.type == "warmup")
            throw config_error("curves need an initial state with closed-form moments");
        if (noise_free && spec.type == "exponential")
            throw config_error("the noise-free evaluator needs deterministic starts");
        // the corrected-cost column does not depend on alpha; benchmark starts do
        const double alpha0 = cfg.alphas.front();
        const InitialState init = spec.build(model, alpha0);
        for (double T : cfg.horizons) {
            std::vector<CostEstimate> sim_ct;
            if (!noise_free)
                sim_ct = estimate_ct_multi(model, mus, T, init, sim);
            const std::string name = "curve_" + model_name(model) + "_" +
                                     spec.label(model, alpha0) + "_T" + fmt_g(T) + ".csv";
            std::ofstream csv = open_csv(cfg, name, log);
            csv << "mu,c_t,c_t_ci,c_hat,c_inf\n";
            for (std::size_t i = 0; i < mus.size(); ++i) {
                double ct, hw;
                if (noise_free) {
                    ct = rbm_ct(rbm_spec(model, mus[i], init.value()), T);
                    hw = 0.0;
                } else {
                    ct = sim_ct[i].mean;
                    hw = sim_ct[i].half_width;
                }
                csv << fmt(mus[i]) << "," << fmt(ct) << "," << fmt(hw) << ",";
                if (mus[i] > stable_floor) {
                    csv << fmt(approx_cost(model, mus[i], T, init)) << ","
                        << fmt(stationary_moments(model, mus[i]).mean);
                } else {
                    csv << "na,na";
                }
                csv << "\n";
            }
            csv.close();
            if (!csv)
                throw error("failed writing curve CSV");
        }
    }
    return 0;
}

int run_figure1(const ExperimentConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    const InputModel model = cfg.model.build();
    const SimConfig sim = cfg.sim.build();
    const double alpha0 = cfg.alphas.front();

    std::vector<double> times(cfg.figure1.points);
    for (int i = 0; i < cfg.figure1.points; ++i)
        times[i] = cfg.figure1.t_max * i / (cfg.figure1.points - 1);

    std::vector<std::vector<MeanCi>> curves;
    curves.reserve(cfg.initial_states.size());
    for (const InitSpec& spec : cfg.initial_states)
        curves.push_back(
            transient_mean_curve(model, cfg.figure1.mu, spec.build(model, alpha0), times, sim));

    const double stationary = stationary_moments(model, cfg.figure1.mu).mean;
    std::ofstream csv = open_csv(cfg, "figure1.csv", log);
    csv << "t";
    for (const InitSpec& spec : cfg.initial_states) {
        const std::string label = spec.label(model, alpha0);
        csv << "," << label << "_mean," << label << "_ci";
    }
    csv << ",stationary\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        csv << fmt(times[i]);
        for (const auto& curve : curves)
            csv << "," << fmt(curve[i].mean) << "," << fmt(curve[i].half_width);
        csv << "," << fmt(stationary) << "\n";
    }
    csv.close();
    if (!csv)
        throw error("failed writing figure CSV");
    return 0;
}

int run_gap_scaling(const ExperimentConfig& cfg, std::ostream& log) {
    validate_config(cfg);
    const InputModel model = cfg.model.build();
    const InitialState init = cfg.initial_states.front().build(model, cfg.gap.alpha);

    std::vector<double> horizons(cfg.gap.points);
    const double ratio = std::pow(cfg.gap.t_max / cfg.gap.t_min,
                                  1.0 / static_cast<double>(cfg.gap.points - 1));
    for (int i = 0; i < cfg.gap.points; ++i)
        horizons[i] = cfg.gap.t_min * std::pow(ratio, i);

    const auto gaps = optimality_gap(model, cfg.gap.alpha, init, horizons);
    std::ofstream csv = open_csv(cfg, "gap_scaling.csv", log);
    csv << "T,gap,gap_t2,interior\n";
    for (const GapPoint& g : gaps) {
        if (!g.interior)
            log << "note: no interior minimizer at T=" << fmt_g(g.T)
                << "; gap taken against the bracket edge\n";
        csv << fmt(g.T) << "," << fmt(g.gap) << "," << fmt(g.gap_t2) << ","
            << (g.interior ? 1 : 0) << "\n";
    }
    csv.close();
    if (!csv)
        throw error("failed writing gap CSV");
    return 0;
}

} // namespace levyq
