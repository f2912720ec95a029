#include "levyq/correction.hpp"
#include "levyq/errors.hpp"
#include "levyq/initial_state.hpp"
#include "levyq/model.hpp"
#include "levyq/optimize.hpp"
#include "levyq/rbm_eval.hpp"
#include "levyq/simulate.hpp"
#include "levyq/stationary.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace levyq;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Transient-horizon cost corrections and corrected staffing rules for "
              "Levy-driven queues";

    py::register_exception<error>(m, "Error", PyExc_ValueError);

    py::enum_<InputKind>(m, "InputKind")
        .value("COMPOUND_POISSON_EXP", InputKind::CompoundPoissonExp)
        .value("COMPOUND_POISSON_PARETO", InputKind::CompoundPoissonPareto)
        .value("BROWNIAN_DRIFT", InputKind::BrownianDrift);

    py::class_<InputModel>(m, "InputModel")
        .def_readonly("kind", &InputModel::kind)
        .def_readonly("lam", &InputModel::lambda)
        .def_readonly("gamma", &InputModel::gamma)
        .def_readonly("k", &InputModel::k)
        .def_readonly("sigma2", &InputModel::sigma2)
        .def("__repr__", [](const InputModel& mdl) {
            return "<InputModel " + model_name(mdl) + " lambda=" + std::to_string(mdl.lambda) +
                   ">";
        });

    m.def("make_mm1", &make_mm1, py::arg("lam"));
    m.def("make_mpareto", &make_mpareto, py::arg("lam"), py::arg("gamma"), py::arg("k"));
    m.def("make_rbm", &make_rbm, py::arg("lam"), py::arg("sigma2"));
    m.def("model_name", &model_name);

    py::class_<Moments>(m, "Moments")
        .def_readonly("u2", &Moments::u2)
        .def_readonly("u3", &Moments::u3);
    m.def("moments", &moments);
    m.def("levy_exponent", &levy_exponent, py::arg("model"), py::arg("mu"), py::arg("theta"));

    py::class_<StationaryMoments>(m, "StationaryMoments")
        .def_readonly("mean", &StationaryMoments::mean)
        .def_readonly("second_moment", &StationaryMoments::second_moment);
    m.def("stationary_moments", &stationary_moments, py::arg("model"), py::arg("mu"));
    m.def("pi_infinity", &pi_infinity, py::arg("model"), py::arg("mu"), py::arg("alpha"));
    m.def("mu_star_infinity", &mu_star_infinity, py::arg("model"), py::arg("alpha"));
    m.def("benchmark_congestion", &benchmark_congestion, py::arg("model"), py::arg("alpha"));

    py::class_<InitialState>(m, "InitialState")
        .def_static("deterministic", &InitialState::deterministic, py::arg("x"))
        .def_static("exponential", &InitialState::exponential, py::arg("mean"))
        .def_static("warmup", &InitialState::warmup, py::arg("burn_in"))
        .def_property_readonly("mean", &InitialState::mean)
        .def_property_readonly("second_moment", &InitialState::second_moment);

    m.def("expected_passage_time", &expected_passage_time, py::arg("model"), py::arg("mu"),
          py::arg("x"));
    m.def("passage_time_second_moment", &passage_time_second_moment, py::arg("model"),
          py::arg("mu"), py::arg("v"));
    m.def("psi_xy", &psi_xy, py::arg("model"), py::arg("mu"), py::arg("T"), py::arg("x"),
          py::arg("y"));
    m.def("psi_t", &psi_T, py::arg("model"), py::arg("mu"), py::arg("T"), py::arg("init"));
    m.def("approx_cost", &approx_cost, py::arg("model"), py::arg("mu"), py::arg("T"),
          py::arg("init"));
    m.def("approx_total_cost", &approx_total_cost, py::arg("model"), py::arg("mu"), py::arg("T"),
          py::arg("alpha"), py::arg("init"));
    m.def("mu_bullet", &mu_bullet, py::arg("model"), py::arg("alpha"), py::arg("init"));
    m.def("corrected_mu", &corrected_mu, py::arg("model"), py::arg("alpha"), py::arg("T"),
          py::arg("init"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("replications", &SimConfig::replications)
        .def_readwrite("bm_step", &SimConfig::bm_step)
        .def_readwrite("ci_level", &SimConfig::ci_level)
        .def_readwrite("jobs", &SimConfig::jobs);

    py::class_<CostEstimate>(m, "CostEstimate")
        .def_readonly("mean", &CostEstimate::mean)
        .def_readonly("half_width", &CostEstimate::half_width)
        .def_readonly("replications", &CostEstimate::replications)
        .def_readonly("seed", &CostEstimate::seed)
        .def("__repr__", [](const CostEstimate& e) {
            return "<CostEstimate " + std::to_string(e.mean) + " +- " +
                   std::to_string(e.half_width) + ">";
        });

    m.def("estimate_ct", &estimate_ct, py::arg("model"), py::arg("mu"), py::arg("T"),
          py::arg("init"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("estimate_ct_multi", &estimate_ct_multi, py::arg("model"), py::arg("mus"), py::arg("T"),
          py::arg("init"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<RbmSpec>(m, "RbmSpec")
        .def_readonly("x", &RbmSpec::x)
        .def_readonly("drift", &RbmSpec::drift)
        .def_readonly("variance", &RbmSpec::variance);
    m.def("rbm_spec", &rbm_spec, py::arg("model"), py::arg("mu"), py::arg("x"));
    m.def("rbm_cdf", &rbm_cdf, py::arg("spec"), py::arg("t"), py::arg("z"));
    m.def("rbm_mean", &rbm_mean, py::arg("spec"), py::arg("t"));
    m.def("rbm_ct", &rbm_ct, py::arg("spec"), py::arg("T"));

    py::class_<MinimizerResult>(m, "MinimizerResult")
        .def_readonly("mu_star", &MinimizerResult::mu_star)
        .def_readonly("value", &MinimizerResult::value)
        .def_readonly("bracket_lo", &MinimizerResult::bracket_lo)
        .def_readonly("bracket_hi", &MinimizerResult::bracket_hi)
        .def_readonly("evaluations", &MinimizerResult::evaluations)
        .def_readonly("interior", &MinimizerResult::interior);
    m.def("minimize_pi_hat", &minimize_pi_hat, py::arg("model"), py::arg("alpha"), py::arg("T"),
          py::arg("init"));

    py::class_<StaffingComparison>(m, "StaffingComparison")
        .def_readonly("mu_inf", &StaffingComparison::mu_inf)
        .def_readonly("mu_corrected", &StaffingComparison::mu_corrected)
        .def_readonly("pi_at_mu_inf", &StaffingComparison::pi_at_mu_inf)
        .def_readonly("pi_at_corrected", &StaffingComparison::pi_at_corrected)
        .def_readonly("rel_reduction", &StaffingComparison::rel_reduction);
    m.def("compare_staffing", &compare_staffing, py::arg("model"), py::arg("alpha"), py::arg("T"),
          py::arg("init"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<GapPoint>(m, "GapPoint")
        .def_readonly("T", &GapPoint::T)
        .def_readonly("gap", &GapPoint::gap)
        .def_readonly("gap_t2", &GapPoint::gap_t2)
        .def_readonly("interior", &GapPoint::interior);
    m.def("optimality_gap", &optimality_gap, py::arg("model"), py::arg("alpha"), py::arg("init"),
          py::arg("horizons"));
}
