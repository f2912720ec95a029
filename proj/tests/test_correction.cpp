#include "doctest.h"

#include "levyq/correction.hpp"
#include "levyq/errors.hpp"
#include "levyq/model.hpp"
#include "levyq/stationary.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace levyq;

namespace {
const InputModel kMm1 = make_mm1(1.0);
const InputModel kPareto = make_mpareto(1.0, 3.2, 0.6875);
const InputModel kRbm1 = make_rbm(1.0, 1.0);
} // namespace

TEST_CASE("passage time moments") {
    CHECK(expected_passage_time(kMm1, 2.0, 3.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(expected_passage_time(kMm1, 2.0, 0.0) == doctest::Approx(0.0));
    CHECK(passage_time_second_moment(kMm1, 2.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(passage_time_second_moment(kRbm1, 2.0, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS_AS(expected_passage_time(kMm1, 1.0, 3.0), stability_error);
    CHECK_THROWS_AS(expected_passage_time(kMm1, 2.0, -1.0), parameter_error);
}

TEST_CASE("transient correction between deterministic starts") {
    CHECK(psi_xy(kMm1, 2.0, 10.0, 2.0, 0.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(psi_xy(kMm1, 2.0, 10.0, 2.0, 2.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(psi_xy(kMm1, 2.0, 0.0, 2.0, 0.0), parameter_error);

    // decomposition through an intermediate level holds exactly
    for (double x : {1.0, 2.5, 7.0})
        for (double y : {0.0, 0.5, 1.0})
            for (double T : {1.0, 5.0})
                for (double mu : {1.5, 3.0}) {
                    const double lhs = psi_xy(kMm1, mu, T, x, y);
                    const double rhs = expected_passage_time(kMm1, mu, y) * (x - y) / T +
                                       psi_xy(kMm1, mu, T, x - y, 0.0);
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
                }

    // integral representation: T Psi^{z,0} = int_0^z E[tau^y] dy
    for (double z : {1.0, 3.0}) {
        auto f = [&](double y) { return expected_passage_time(kPareto, 2.0, y); };
        const double quad = oracle::simpson(f, 0.0, z, 1e-12);
        CHECK(quad == doctest::Approx(psi_xy(kPareto, 2.0, 4.0, z, 0.0) * 4.0).epsilon(1e-10));
    }
}

TEST_CASE("psi for an initial state") {
    CHECK(psi_T(kMm1, 2.0, 10.0, InitialState::deterministic(0.0)) ==
          doctest::Approx(-0.2).epsilon(1e-12));
    // consistency with the generic bracket
    const InitialState exp_start = InitialState::exponential(1.5);
    const double d = 2.0 - 1.0;
    const double expect =
        (exp_start.second_moment() - stationary_moments(kMm1, 2.0).second_moment) / (2.0 * 5.0 * d);
    CHECK(psi_T(kMm1, 2.0, 5.0, exp_start) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(psi_T(kMm1, 2.0, 5.0, InitialState::warmup(10.0)), unsupported_analytics);
}

TEST_CASE("remainder bounds") {
    CHECK(delta_bound_xy(kMm1, 2.0, 10.0, 2.0, 0.0) ==
          doctest::Approx((8.0 / 3.0 + 4.0) / 100.0).epsilon(1e-14));
    CHECK(delta_bound_xy(kMm1, 2.0, 10.0, 0.0, 2.0) ==
          delta_bound_xy(kMm1, 2.0, 10.0, 2.0, 0.0)); // symmetric in (x, y)
    // surrogate with stationary comparison level, x = 0: uses E[Q^2], E[Q^3]
    const double b = delta_bound_surrogate(kMm1, 2.0, 10.0, 0.0, 4.0, 24.0);
    CHECK(b == doctest::Approx((24.0 / 3.0 + 2.0 * 4.0 / 2.0) / 100.0).epsilon(1e-12));
    CHECK_THROWS_AS(delta_bound_surrogate(kMm1, 2.0, 10.0, 0.0, -1.0, 24.0), parameter_error);
}

TEST_CASE("corrected cost approximations") {
    CHECK(approx_cost(kMm1, 2.0, 10.0, InitialState::deterministic(0.0)) ==
          doctest::Approx(0.8).epsilon(1e-12));
    CHECK(approx_cost(kRbm1, 2.0, 5.0, InitialState::deterministic(2.5)) ==
          doctest::Approx(1.075).epsilon(1e-12));
    CHECK(approx_total_cost(kMm1, 2.0, 10.0, 1.0, InitialState::deterministic(0.0)) ==
          doctest::Approx(2.8).epsilon(1e-12));
}

TEST_CASE("staffing adjustment mu_bullet") {
    CHECK(mu_bullet(kMm1, 1.0, InitialState::deterministic(0.0)) ==
          doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(mu_bullet(kPareto, 1.0, InitialState::deterministic(0.0)) ==
          doctest::Approx(-11.0 / 8.0 - (11.0 / 16.0) * std::sqrt(3.0)).epsilon(1e-12));
    // high-backlog start x = 2 sqrt(alpha) for the exponential-jump model
    CHECK(mu_bullet(kMm1, 1.0, InitialState::deterministic(2.0)) ==
          doctest::Approx(-1.5).epsilon(1e-12));
    CHECK_THROWS_AS(mu_bullet(kMm1, 1.0, InitialState::warmup(5.0)), unsupported_analytics);

    // starting from stationarity at mu_star_infinity the adjustment reduces to
    // -u3/(6 u2) - sqrt(alpha lambda u2 / 2) (negative: always staff below the
    // stationary rule when already in steady state)
    for (const InputModel& m : {kMm1, kPareto, kRbm1}) {
        for (double alpha : {0.1, 1.0, 2.0}) {
            const double mu_opt = mu_star_infinity(m, alpha);
            const double q2 = stationary_moments(m, mu_opt).second_moment;
            const Moments mom = moments(m);
            const double expect = -mom.u3 / (6.0 * mom.u2) -
                                  std::sqrt(alpha * m.lambda * mom.u2 / 2.0);
            CHECK(mu_bullet(m, alpha, InitialState::deterministic(std::sqrt(q2))) ==
                  doctest::Approx(expect).epsilon(1e-12));
            CHECK(expect < 0.0);
        }
    }
}

TEST_CASE("corrected capacity rule") {
    const InitialState empty = InitialState::deterministic(0.0);
    CHECK(corrected_mu(kMm1, 1.0, 1.0, empty) == 0.0); // clamps exactly
    CHECK(corrected_mu(kMm1, 1.0, 2.0, empty) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(corrected_mu(kMm1, 1.0, 5.0, empty) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(corrected_mu(kMm1, 1.0, 10.0, empty) == doctest::Approx(1.75).epsilon(1e-12));

    const InitialState high = InitialState::deterministic(2.0 * std::sqrt(0.1));
    CHECK(corrected_mu(kMm1, 0.1, 1.0, high) == doctest::Approx(3.0041638).epsilon(1e-7));
    CHECK(corrected_mu(kMm1, 0.1, 10.0, high) == doctest::Approx(4.0464663).epsilon(1e-7));

    // approaches the stationary rule at rate exactly mu_bullet / T
    for (double T : {10.0, 100.0, 1000.0}) {
        const double gap = corrected_mu(kMm1, 1.0, T, empty) - mu_star_infinity(kMm1, 1.0);
        CHECK(gap * T == doctest::Approx(mu_bullet(kMm1, 1.0, empty)).epsilon(1e-9));
    }
}
