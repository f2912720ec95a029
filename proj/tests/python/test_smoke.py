import math

import pytest

import levyq


def test_model_factories_and_moments():
    mm1 = levyq.make_mm1(1.0)
    assert levyq.model_name(mm1) == "mm1"
    m = levyq.moments(mm1)
    assert m.u2 == pytest.approx(2.0)
    assert m.u3 == pytest.approx(6.0)

    pareto = levyq.make_mpareto(1.0, 3.2, 0.6875)
    assert levyq.moments(pareto).u2 == pytest.approx(121.0 / 96.0)

    with pytest.raises(levyq.Error):
        levyq.make_mpareto(1.0, 2.5, 0.6875)
    with pytest.raises(levyq.Error):
        levyq.make_rbm(1.0, -1.0)


def test_stationary_and_staffing_rules():
    mm1 = levyq.make_mm1(1.0)
    st = levyq.stationary_moments(mm1, 2.0)
    assert st.mean == pytest.approx(1.0)
    assert st.second_moment == pytest.approx(4.0)

    assert levyq.mu_star_infinity(mm1, 1.0) == pytest.approx(2.0)
    empty = levyq.InitialState.deterministic(0.0)
    assert levyq.corrected_mu(mm1, 1.0, 5.0, empty) == pytest.approx(1.5)
    assert levyq.corrected_mu(mm1, 1.0, 1.0, empty) == 0.0
    assert levyq.mu_bullet(mm1, 1.0, empty) == pytest.approx(-2.5)


def test_simulation_is_deterministic_and_consistent():
    mm1 = levyq.make_mm1(1.0)
    cfg = levyq.SimConfig()
    cfg.seed = 4321
    cfg.replications = 5000
    cfg.jobs = 1
    init = levyq.InitialState.deterministic(0.0)

    a = levyq.estimate_ct(mm1, 2.0, 5.0, init, cfg)
    b = levyq.estimate_ct(mm1, 2.0, 5.0, init, cfg)
    assert a.mean == b.mean
    assert a.half_width == b.half_width

    stationary = levyq.stationary_moments(mm1, 2.0).mean
    assert a.mean < stationary
    assert abs(a.mean - 0.8) < 0.15


def test_rbm_evaluator_matches_known_limits():
    rbm = levyq.make_rbm(1.0, 1.0)
    spec = levyq.rbm_spec(rbm, 2.0, 0.0)
    assert spec.drift == pytest.approx(-1.0)
    long_run = levyq.rbm_mean(spec, 400.0)
    assert long_run == pytest.approx(0.5, abs=1e-6)
    assert 0.0 < levyq.rbm_ct(spec, 5.0) < 0.5
    assert levyq.rbm_cdf(spec, 1.0, -0.5) == 0.0


def test_optimizer_reports_interior_minimum():
    mm1 = levyq.make_mm1(1.0)
    empty = levyq.InitialState.deterministic(0.0)
    res = levyq.minimize_pi_hat(mm1, 1.0, 40.0, empty)
    assert res.interior
    assert res.mu_star == pytest.approx(1.9266615967, abs=1e-6)
    corrected = levyq.corrected_mu(mm1, 1.0, 40.0, empty)
    assert math.isclose(res.mu_star, corrected, rel_tol=0.05)

    # short horizons have no interior stationary point
    short = levyq.minimize_pi_hat(mm1, 1.0, 10.0, empty)
    assert not short.interior
