import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adwlab.spectral import (
    ModalVector,
    SpectralMeasure,
    apply_spectral_function,
    build_symbol_measure,
    load_measure,
    measure_from_json,
    measure_to_json,
    modal_inner,
    path_graph_measure,
    quadrature_grid,
    save_measure,
    sobolev_norm,
    symbol_modes,
)


def test_measure_validation():
    with pytest.raises(ValueError):
        SpectralMeasure((1.0, 0.5), (1.0, 1.0))  # not ascending
    with pytest.raises(ValueError):
        SpectralMeasure((-0.1,), (1.0,))  # negative eigenvalue
    with pytest.raises(ValueError):
        SpectralMeasure((1.0,), (0.0,))  # zero weight
    with pytest.raises(ValueError):
        SpectralMeasure((1.0, 2.0), (1.0,))  # length mismatch


def test_modal_vector_arithmetic():
    a = ModalVector((1.0, 2.0))
    b = ModalVector((0.5, -1.0))
    assert (a + b).coeffs == pytest.approx((1.5, 1.0))
    assert (a - b).coeffs == pytest.approx((0.5, 3.0))
    assert a.scaled(2.0).coeffs == pytest.approx((2.0, 4.0))


def test_quadrature_grid_midpoint_integrates_linear():
    xs, ws = quadrature_grid(0.0, 2.0, 8, "midpoint")
    assert math.fsum(ws) == pytest.approx(2.0, rel=1e-14)
    assert math.fsum(w * x for x, w in zip(xs, ws)) == pytest.approx(2.0, rel=1e-14)


def test_gauss_legendre_exactness():
    # single-panel GL with n points is exact through degree 2n-1
    xs, ws = quadrature_grid(0.0, 1.0, 6, "gauss-legendre")
    for k in range(12):
        approx = math.fsum(w * x**k for x, w in zip(xs, ws))
        assert approx == pytest.approx(1.0 / (k + 1), rel=1e-12), k


def test_composite_gauss_legendre_integrates_smooth():
    xs, ws = quadrature_grid(0.0, math.pi, 64, "composite-gauss-legendre")
    approx = math.fsum(w * math.sin(x) for x, w in zip(xs, ws))
    assert approx == pytest.approx(2.0, rel=1e-12)


def test_composite_rule_requires_multiple_of_panel():
    with pytest.raises(ValueError):
        quadrature_grid(0.0, 1.0, 12, "composite-gauss-legendre")


def test_unknown_rule_rejected():
    with pytest.raises(ValueError):
        quadrature_grid(0.0, 1.0, 8, "trapezoid")


def test_symbol_modes_sorted_and_positive():
    xs, lams, ws = symbol_modes(lambda x: x**2, 0.0, 2.0, 32,
                                "composite-gauss-legendre", lambda x: 1.0)
    assert np.all(np.diff(lams) > 0)
    assert np.all(ws > 0)
    assert lams[0] == pytest.approx(xs[0] ** 2)


def test_symbol_modes_rejects_negative_symbol():
    with pytest.raises(ValueError, match="at xi="):
        symbol_modes(lambda x: x - 1.0, 0.0, 2.0, 8, "midpoint", lambda x: 1.0)


def test_build_symbol_measure_wave_plancherel():
    # with unit density, sum of weights approximates the interval length
    meas = build_symbol_measure(lambda x: x**2, 0.0, 1.0, 64,
                                "composite-gauss-legendre", lambda x: 1.0,
                                label="unit")
    assert math.fsum(meas.weights) == pytest.approx(1.0, rel=1e-12)


def test_path_graph_measure_matches_dense_eigenvalues():
    n = 7
    meas = path_graph_measure(n)
    lap = np.zeros((n, n))
    for i in range(n):
        for j in (i - 1, i + 1):
            if 0 <= j < n:
                lap[i, i] += 1.0
                lap[i, j] -= 1.0
    eig = np.sort(np.linalg.eigvalsh(lap))
    assert np.allclose(np.array(meas.lambdas), eig, atol=1e-10)
    assert meas.lambdas[0] == 0.0


def test_sobolev_norm_known_values():
    meas = SpectralMeasure((0.0, 1.0, 4.0), (1.0, 1.0, 1.0))
    f = ModalVector((1.0, 1.0, 1.0))
    assert sobolev_norm(meas, f) == pytest.approx(math.sqrt(3.0), rel=1e-14)
    # s = 1/2: sum lam^1 |c|^2 = 0 + 1 + 4
    assert sobolev_norm(meas, f, 0.5) == pytest.approx(math.sqrt(5.0), rel=1e-14)
    # zero eigenvalue contributes nothing for s > 0
    g = ModalVector((1.0, 0.0, 0.0))
    assert sobolev_norm(meas, g, 1.0) == 0.0


def test_zero_power_of_zero_eigenvalue_counts():
    meas = SpectralMeasure((0.0,), (2.0,))
    f = ModalVector((3.0,))
    # s = 0 means plain weighted l2, 0^0 treated as 1
    assert sobolev_norm(meas, f, 0.0) == pytest.approx(math.sqrt(2.0) * 3.0)


def test_apply_spectral_function():
    meas = SpectralMeasure((1.0, 4.0), (1.0, 1.0))
    f = ModalVector((2.0, 3.0))
    g = apply_spectral_function(meas, f, lambda lam: lam**2)
    assert g.coeffs == pytest.approx((2.0, 48.0))


def test_modal_inner_symmetry():
    meas = SpectralMeasure((0.5, 2.0), (1.0, 3.0))
    f = ModalVector((1.0, -1.0))
    g = ModalVector((2.0, 0.5))
    assert modal_inner(meas, f, g) == pytest.approx(modal_inner(meas, g, f))
    assert modal_inner(meas, f, f) == pytest.approx(sobolev_norm(meas, f) ** 2)


def test_measure_json_roundtrip(tmp_path):
    meas = SpectralMeasure((0.0, 0.5), (1.0, 2.0), label="demo")
    doc = measure_to_json(meas)
    assert doc["version"] == 1
    back = measure_from_json(doc)
    assert np.array_equal(back.lambdas, meas.lambdas)
    assert np.array_equal(back.weights, meas.weights)
    assert back.label == "demo"
    path = tmp_path / "m.json"
    save_measure(meas, str(path))
    loaded = load_measure(str(path))
    assert np.array_equal(loaded.lambdas, meas.lambdas)
    # the file itself is plain JSON
    assert json.loads(path.read_text())["label"] == "demo"


def test_measure_from_json_rejects_bad_version():
    with pytest.raises(ValueError):
        measure_from_json({"version": 99, "label": "", "modes": [[0.0, 1.0]]})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(min_value=0.01, max_value=10.0), min_size=1,
                max_size=6, unique=True),
       st.floats(min_value=0.1, max_value=2.0))
def test_sobolev_norm_scales_linearly(lams, c):
    lams = sorted(lams)
    meas = SpectralMeasure(tuple(lams), tuple(1.0 for _ in lams))
    f = ModalVector(tuple(1.0 for _ in lams))
    base = sobolev_norm(meas, f, 0.5)
    assert sobolev_norm(meas, f.scaled(c), 0.5) == pytest.approx(c * base, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.0, max_value=5.0))
def test_heat_semigroup_contracts(t):
    meas = SpectralMeasure((0.0, 0.3, 2.0), (1.0, 1.0, 1.0))
    f = ModalVector((1.0, -2.0, 0.5))
    flowed = apply_spectral_function(meas, f, lambda lam: math.exp(-t * lam))
    assert sobolev_norm(meas, flowed) <= sobolev_norm(meas, f) + 1e-12
