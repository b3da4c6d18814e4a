"""Smoke tests for the hyperfront python module."""

import json
import math

import pytest

import hyperfront as hf


@pytest.fixture
def params_tau():
    return hf.SimilarityParams(gamma=1.4, a_inf=0.5, tau=0.1)


@pytest.fixture
def params_0():
    return hf.SimilarityParams(gamma=1.4, a_inf=0.5, tau=0.0)


def test_background_eigenvalues(params_tau, params_0):
    bg = hf.State(1.0, 0.0)
    l1, l2 = hf.eigenvalues(bg, params_tau)
    expect = 1.0 / math.sqrt(0.25 - 0.01)
    assert l1 == pytest.approx(-expect, rel=1e-14)
    assert l2 == pytest.approx(expect, rel=1e-14)
    l1, l2 = hf.eigenvalues(bg, params_0)
    assert (l1, l2) == (pytest.approx(-2.0), pytest.approx(2.0))


def test_axial_velocity_and_fluxes(params_0):
    u = hf.State(1.0, 0.1)
    assert hf.axial_velocity(u, params_0) == pytest.approx(-0.005)
    g = hf.flux_G(u, params_0)
    assert g == [1.0, 0.1]
    f = hf.flux_F(u, params_0)
    assert f[0] == pytest.approx(0.1)
    assert f[1] == pytest.approx(0.005)


def test_wave_curve_and_riemann_roundtrip(params_tau):
    bg = hf.State(1.0, 0.0)
    mid = hf.wave_curve(1, -0.02, bg, params_tau)
    top = hf.wave_curve(2, 0.015, mid.state, params_tau)
    fan = hf.solve_interior(bg, top.state, params_tau)
    assert fan.alpha1 == pytest.approx(-0.02, abs=1e-9)
    assert fan.alpha2 == pytest.approx(0.015, abs=1e-9)


def test_boundary_solver_slip(params_0):
    fan = hf.solve_boundary(hf.State(1.0, 0.0), -0.05, params_0)
    assert fan.alpha1 < 0.0  # compressive corner makes a shock
    assert fan.wall_state.v == pytest.approx(math.tan(-0.05), abs=1e-12)


def test_domain_error_is_typed(params_tau):
    with pytest.raises(hf.DomainError):
        hf.sonic_speed(-1.0, params_tau)


def test_l1_distance_rectangle():
    d = hf.l1_distance([0.0], [(1.0, 0.0), (1.02, 0.01)],
                       [0.25], [(1.0, 0.0), (1.02, 0.01)], 10.0)
    assert d == pytest.approx(0.03 * 0.25, rel=1e-12)


def test_fit_rate_power_law():
    slope, intercept, residual = hf.fit_rate(
        [(t, 3.0 * t * t) for t in (0.2, 0.1, 0.05, 0.025)])
    assert slope == pytest.approx(2.0, abs=1e-12)
    assert residual < 1e-12


def _wedge_config(tau=0.1):
    return json.dumps({
        "schema_version": 1,
        "params": {"gamma": 1.4, "a_inf": 0.5, "tau": tau},
        "regime": "scaled" if tau > 0 else "small_disturbance",
        "geometry": {"kind": "piecewise_linear", "breakpoints": [0.0],
                      "slopes": [-0.05]},
        "initial_data": {"kind": "constant"},
        "h": 0.05, "nu": 12, "x_end": 1.0, "seed": 3,
        "query_xs": [1.0],
    })


def test_run_summary_single_corner():
    rc = hf.load_config(_wedge_config())
    summary = hf.run_summary(rc)
    assert summary["events"] == 1
    assert summary["fronts"] == 1
    assert summary["max_rarefaction"] <= 1.0 / 12.0
    assert summary["glimm_initial"] > 0.0


def test_compare_rows_positive_error():
    rows = hf.compare_rows(hf.load_config(_wedge_config()))
    assert len(rows) == 1
    assert rows[0].x == 1.0
    assert rows[0].l1_total > 0.0
    assert rows[0].l1_total < 1.0


def test_config_rejects_unknown_keys():
    bad = json.loads(_wedge_config())
    bad["mystery"] = 1
    with pytest.raises(hf.ConfigError):
        hf.load_config(json.dumps(bad))
