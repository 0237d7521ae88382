import math

import numpy as np
import pytest

import rdsir


def test_presets_and_parsing():
    assert set(rdsir.PRESETS) == {"fig1", "fig3", "fig4", "fig5", "fig6", "basic_sir"}
    fig1 = rdsir.preset("fig1")
    assert rdsir.parse_scenario(fig1.serialize()) == fig1
    assert rdsir.parse_scenario("preset = fig1\n") == fig1
    with pytest.raises(ValueError, match="line 2"):
        rdsir.parse_scenario("preset = fig1\nparams.beta = -1\n")
    fig1.set("params.beta", "2")
    assert not fig1 == rdsir.preset("fig1")


def test_laplacian_and_integral():
    g = rdsir.Grid(32, 16)
    x, y = np.meshgrid(g.x(), g.y())
    assert x.shape == (16, 32)
    assert np.abs(rdsir.laplacian(g, np.full((16, 32), 3.0))).max() == 0.0
    f = np.cos(math.pi * (x + 5) / 10)
    expected = -((math.pi / 10) ** 2) * f
    assert np.abs(rdsir.laplacian(g, f) - expected).max() < 0.01
    assert rdsir.integrate(g, np.ones((16, 32))) == pytest.approx(100.0)


def test_helmholtz_solve_residual():
    g = rdsir.Grid(24, 24)
    rng = np.random.default_rng(3)
    rhs = rng.uniform(-1, 1, (24, 24))
    u = rdsir.helmholtz_solve(g, rhs, 1.0, 0.05)
    residual = u - rdsir.laplacian(g, u, 0.05) - rhs
    assert np.linalg.norm(residual) <= 1e-9 * np.linalg.norm(rhs)
    with pytest.raises(rdsir.SolverError):
        rdsir.helmholtz_solve(g, rhs, 0.0, 0.05)


def test_spectral_functions():
    g = rdsir.Grid(16, 16)
    b = np.full((16, 16), 0.02)
    steady = rdsir.steady_state(g, b, 0.101, 0.02)
    assert np.allclose(steady, 0.02 / 0.101, rtol=1e-12)
    lam, phi = rdsir.principal_eigenpair(g, 0.1, np.full((16, 16), -0.5))
    assert lam == pytest.approx(-0.5)
    assert phi.min() > 0
    r, _ = rdsir.reproduction_number(g, 0.3, np.full((16, 16), 2.0), 4.0)
    assert r == pytest.approx(0.5)

    fig4 = rdsir.preset("fig4")
    rep = rdsir.sign_consistency(fig4, "noncompliant")
    assert rep["r0"] == pytest.approx(50 * (0.02 / 0.101) / 1.101, rel=1e-8)
    assert rep["consistent"]
    assert rdsir.linearization_check(fig4, "noncompliant")["passed"]
    assert not rdsir.linearization_check(rdsir.preset("fig3"), "compliant")["m_cooperative"]


def test_run_small_scenario():
    cfg = rdsir.parse_scenario("preset = fig3\ngrid.nx = 16\ngrid.ny = 16\nstepper.t_end = 0.1\n"
                               "stepper.snapshot_times = 0, 0.1\n")
    out = rdsir.run(cfg)
    series = out["series"]
    assert len(series["t"]) == 2
    assert series["infected_fraction"][0] == pytest.approx(0.009901, abs=1e-6)
    assert out["violations"] == []
    assert len(out["snapshots"]) == 2
    final = out["final"]
    assert final["S"].shape == (16, 16)
    assert min(v.min() for v in final.values() if isinstance(v, np.ndarray)) >= 0.0
    init = cfg.initial_state()
    assert np.allclose(init["Ss"], init["S"] / 20)
