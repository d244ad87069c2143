"""Smoke tests for the python bindings."""

import math

import pytest

import deltaprime as dp


def test_version():
    assert dp.__version__.count(".") == 2


def test_curvature_profiles():
    bump = dp.CurvatureProfile.gaussian_bump(0.5)
    assert bump.gamma(0.0) == pytest.approx(0.5)
    assert bump.bounds.gamma_max == pytest.approx(0.5)
    assert bump.family == "gaussian_bump"
    line = dp.CurvatureProfile.line()
    assert line.is_line


def test_curve_reconstruction_roundtrip():
    prof = dp.CurvatureProfile.gaussian_bump(0.5)
    curve = dp.curve_from_curvature(prof, window=12.0)
    assert dp.signed_curvature(curve, 1.0) == pytest.approx(prof.gamma(1.0))
    d1 = curve.derivative(0.7, 1)
    assert d1[0] ** 2 + d1[1] ** 2 == pytest.approx(1.0, abs=1e-10)


def test_circle_curvature():
    circ = dp.PlanarCurve.circle(2.0)
    assert dp.signed_curvature(circ, 1.0) == pytest.approx(0.5, abs=1e-12)


def test_transverse_envelope():
    r = dp.transverse_eigenvalue_dirichlet(10.0, 1.0)
    assert r.t == pytest.approx(-4.0, abs=1e-12)
    lo, hi = dp.lemma_trans_envelope(10.0, 1.0)
    assert lo <= r.t <= hi + 1e-12
    rb = dp.transverse_eigenvalue_robin(10.0, 1.0, 0.5)
    assert rb.t <= -4.0


def test_transverse_regime_error():
    with pytest.raises(ValueError):
        dp.transverse_eigenvalue_dirichlet(1.0, 1.0)


def test_oracle_matches_transcendental():
    t_exact = dp.transverse_eigenvalue_dirichlet(2.5, 1.0).t
    t1, count = dp.transverse_fd_oracle(2.5, 1.0, n=512)
    t2, _ = dp.transverse_fd_oracle(2.5, 1.0, n=1024)
    assert count == 1
    extrapolated = (4.0 * t2 - t1) / 3.0
    assert extrapolated == pytest.approx(t_exact, rel=1e-6)


def test_comparison_spectrum():
    bump = dp.CurvatureProfile.gaussian_bump(1.0)
    sp = dp.comparison_spectrum(bump, k=1)
    assert len(sp.eigenvalues) == 1
    assert sp.eigenvalues[0].value == pytest.approx(-0.02096, abs=5e-4)


def test_halfwidth_schedule():
    a, ok = dp.halfwidth_schedule(0.05)
    assert a == pytest.approx(-0.75 * 0.05 * math.log(0.05))
    assert ok
    _, ok = dp.halfwidth_schedule(0.2)
    assert not ok


def test_bracket_spectrum_and_threshold():
    bump = dp.CurvatureProfile.gaussian_bump(1.0)
    bs = dp.bracket_spectrum(bump, 0.05, k=1)
    assert len(bs.records) == 1
    rec = bs.records[0]
    assert rec.lower <= rec.prediction <= rec.upper
    thr = dp.ess_threshold_bound(bump, 0.02, 64.0, dp.halfwidth_schedule(0.02)[0])
    assert thr.best_bound * 0.02**2 / (-4.0) == pytest.approx(1.0, abs=1e-3)


def test_strip_solver_free_modes():
    line = dp.CurvatureProfile.line()
    # line with coupling: lowest eigenvalue ~ t_+ + (pi/2L)^2
    coarse, res_c = dp.solve_strip(line, a=3.0, beta=1.0, L=5.0, ns=100, nu=48)
    fine, res_f = dp.solve_strip(line, a=3.0, beta=1.0, L=5.0, ns=100, nu=96)
    expected = dp.transverse_eigenvalue_dirichlet(3.0, 1.0).t + (math.pi / 10.0) ** 2
    # second-order convergence toward the separable value
    assert fine[0] == pytest.approx(expected, rel=5e-3)
    assert abs(fine[0] - expected) < 0.3 * abs(coarse[0] - expected)
    assert res_c[0] < 1e-8 and res_f[0] < 1e-8
