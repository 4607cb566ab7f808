from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial.hermite import hermgauss, hermval
from scipy.special import factorial

from phasemoments.hermite_quad import (Grid1D, default_grid, fourier_unitary, gauss_hermite, hermite_fn,
                                       hermite_functions, write_samples_csv)


def _hermite_reference(n, t):
    # physicists' polynomial via numpy, normalized; fine for small n
    c = np.zeros(n + 1)
    c[n] = 1
    return hermval(t, c) * np.exp(-t * t / 2) / sqrt(2.0 ** n * factorial(n) * sqrt(pi))


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 20])
def test_hermite_fn_against_polynomial(n):
    t = np.linspace(-6, 6, 101)
    assert np.allclose(hermite_fn(n, t), _hermite_reference(n, t), atol=1e-12)


def test_hermite_orthonormal():
    g = Grid1D.symmetric(20.0, 4096)
    h = hermite_functions(30, g.points)
    gram = h @ h.T * g.step
    assert np.allclose(gram, np.eye(31), atol=1e-12)


def test_hermite_large_order_finite():
    t = np.array([0.0, 10.0, 40.0, 60.0])
    v = hermite_fn(400, t)
    assert np.all(np.isfinite(v))
    assert abs(v[-1]) < 1e-100


def test_hermite_rejects_negative_order():
    with pytest.raises(ValueError):
        hermite_fn(-1, 0.0)


def test_hermite_functions_rows_match_scalar():
    t = np.linspace(-5, 5, 33)
    h = hermite_functions(12, t)
    for n in range(13):
        assert np.allclose(h[n], hermite_fn(n, t), atol=1e-14)


@pytest.mark.parametrize("count", [1, 2, 5, 20, 64, 150, 200])
def test_gauss_hermite_matches_numpy(count):
    rule = gauss_hermite(count)
    nodes, weights = hermgauss(count)
    assert np.allclose(rule.nodes, nodes, atol=1e-12)
    assert np.allclose(rule.weights, weights, rtol=1e-9, atol=1e-300)


def test_gauss_hermite_t10_moment():
    # exact value 945 sqrt(pi)/32, cross-checked by a fine trapezoid sum
    t = np.linspace(-12, 12, 200001)
    trap = np.trapezoid(t ** 10 * np.exp(-t * t), t)
    exact = 945 * sqrt(pi) / 32
    assert trap == pytest.approx(exact, rel=1e-12)
    assert gauss_hermite(6).integrate(lambda x: x ** 10) == pytest.approx(exact, rel=1e-12)


@given(st.integers(1, 40))
def test_gauss_hermite_weights_sum_to_sqrt_pi(count):
    rule = gauss_hermite(count)
    assert rule.weights.sum() == pytest.approx(sqrt(pi), rel=1e-12)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.allclose(rule.nodes, -rule.nodes[::-1], atol=1e-12)


@given(st.integers(1, 30), st.integers(0, 59))
def test_gauss_hermite_exact_degree(count, degree):
    if degree > 2 * count - 1:
        return
    exact = 0.0 if degree % 2 else float(factorial(degree) / (factorial(degree // 2) * 2 ** degree) * sqrt(pi))
    rule = gauss_hermite(count)
    got = rule.integrate(lambda x: x ** degree)
    scale = rule.integrate(lambda x: np.abs(x) ** degree)
    assert abs(got - exact) <= 1e-12 * scale


@pytest.mark.parametrize("count", [0, 201])
def test_gauss_hermite_count_bounds(count):
    with pytest.raises(ValueError):
        gauss_hermite(count)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 7])
def test_fourier_hermite_eigenfunctions(n):
    g = Grid1D.symmetric(16.0, 1024)
    spec, dual = fourier_unitary(hermite_fn(n, g.points), g)
    want = (-1j) ** n * hermite_fn(n, dual.points)
    assert np.allclose(spec, want, atol=1e-12)


def test_fourier_shifted_gaussian_phase():
    g = Grid1D.symmetric(20.0, 2048)
    a = 1.5
    spec, dual = fourier_unitary(np.exp(-(g.points - a) ** 2 / 2), g)
    want = np.exp(-dual.points ** 2 / 2 - 1j * a * dual.points)
    assert np.allclose(spec, want, atol=1e-12)


@given(st.lists(st.floats(-1, 1), min_size=8, max_size=8))
def test_fourier_is_unitary(values):
    g = Grid1D.symmetric(4.0, 8)
    v = np.asarray(values)
    spec, dual = fourier_unitary(v, g)
    assert np.sum(np.abs(spec) ** 2) * dual.step == pytest.approx(np.sum(v ** 2) * g.step, abs=1e-12)


def test_fourier_rejects_bad_grids():
    with pytest.raises(ValueError):
        fourier_unitary(np.ones(12), Grid1D.symmetric(1.0, 12))
    with pytest.raises(ValueError):
        fourier_unitary(np.ones(8), Grid1D(0.0, 0.1, 8))


def test_dual_grid_step():
    g = Grid1D.symmetric(8.0, 256)
    assert g.dual().step == pytest.approx(2 * pi / 16.0)
    assert g.dual(4).count == 1024 and g.dual().is_fft_ready


def test_default_grid_env(monkeypatch):
    monkeypatch.setenv("PHQ_GRID_HALFWIDTH", "10")
    monkeypatch.setenv("PHQ_GRID_POINTS", "128")
    g = default_grid()
    assert (g.start, g.count) == (-10.0, 128)


def test_samples_csv_round_trip(tmp_path):
    g = Grid1D.symmetric(3.0, 8)
    vals = np.exp(1j * g.points) * hermite_fn(2, g.points)
    path = tmp_path / "s.csv"
    write_samples_csv(path, g, vals)
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert np.array_equal(data[:, 0], g.points)
    assert np.array_equal(data[:, 1] + 1j * data[:, 2], vals)
