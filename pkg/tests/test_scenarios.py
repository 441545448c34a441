import json
import math

import numpy as np
import pytest

from adwlab.scenarios import (
    BUILTIN_SUMMARIES,
    Scenario,
    SchemaError,
    TimeGrid,
    builtin_names,
    load_scenario,
    scenario_from_dict,
)


def test_builtin_names_sorted_and_summarized():
    names = builtin_names()
    assert names == sorted(names)
    assert set(names) == set(BUILTIN_SUMMARIES)
    assert "wave-line" in names and "zero-mode" in names


@pytest.mark.parametrize("name", ["wave-line", "beam", "path-graph-16",
                                  "zero-mode", "gap"])
def test_builtins_load(name):
    sc = load_scenario(name)
    assert sc.name == name
    assert len(sc.u0.coeffs) == len(sc.measure)
    assert len(sc.u1.coeffs) == len(sc.measure)
    assert 0 <= sc.m_max <= 8


def test_wave_line_uses_uniform_lambda_density():
    sc = load_scenario("wave-line")
    # weights must approximate d(lambda), i.e. sum to lam_max - lam_min
    total = math.fsum(sc.measure.weights)
    lam_span = sc.measure.lambdas[-1] - sc.measure.lambdas[0]
    assert total == pytest.approx(lam_span, rel=1e-2)


def test_zero_mode_scenario_shape():
    sc = load_scenario("zero-mode")
    assert len(sc.measure) == 1
    assert sc.measure.lambdas[0] == 0.0
    assert sc.u0.coeffs[0] == 0.0
    assert sc.u1.coeffs[0] == 1.0


def test_unknown_scenario_lists_builtins():
    with pytest.raises(ValueError, match="wave-line"):
        load_scenario("no-such-scenario")


def test_scenario_from_dict_explicit():
    doc = {
        "name": "two-modes",
        "measure": {"builder": "explicit", "modes": [[0.5, 1.0], [2.0, 0.5]]},
        "u0": {"builder": "explicit", "coeffs": [1.0, -1.0]},
        "u1": {"builder": "constant", "value": 0.5},
        "m_max": 2,
    }
    sc = scenario_from_dict(doc, origin="inline")
    assert sc.name == "two-modes"
    assert len(sc.measure) == 2
    assert sc.u1.coeffs == pytest.approx((0.5, 0.5))
    assert sc.v0.coeffs == pytest.approx((1.5, -0.5))


def test_scenario_schema_error_pointers():
    with pytest.raises(SchemaError) as exc:
        scenario_from_dict({"name": "x"}, origin="inline")
    assert "/measure" in str(exc.value)

    doc = {
        "name": "x",
        "measure": {"builder": "explicit", "modes": [[0.5, 1.0]]},
        "u0": {"builder": "explicit", "coeffs": [1.0, 2.0]},
    }
    with pytest.raises(SchemaError) as exc:
        scenario_from_dict(doc, origin="inline")
    assert "/u0/coeffs" in str(exc.value)


def test_scenario_rejects_bad_m_max():
    doc = {
        "name": "x",
        "measure": {"builder": "explicit", "modes": [[1.0, 1.0]]},
        "m_max": 9,
    }
    with pytest.raises(SchemaError, match="m_max"):
        scenario_from_dict(doc, origin="inline")


def test_scenario_rejects_unknown_builder():
    doc = {
        "name": "x",
        "measure": {"builder": "fourier", "modes": []},
    }
    with pytest.raises(SchemaError, match="builder"):
        scenario_from_dict(doc, origin="inline")


def test_random_builder_is_seed_deterministic():
    doc = {
        "name": "r",
        "measure": {"builder": "explicit",
                    "modes": [[0.5, 1.0], [1.0, 1.0], [2.0, 1.0]]},
        "u0": {"builder": "random", "seed": 7},
        "u1": {"builder": "zero"},
    }
    a = scenario_from_dict(doc, origin="inline")
    b = scenario_from_dict(doc, origin="inline")
    assert np.array_equal(a.u0.coeffs, b.u0.coeffs)


def test_gaussian_builder_shape():
    doc = {
        "name": "g",
        "measure": {
            "builder": "symbol", "symbol": "wave", "xi_min": 0.0,
            "xi_max": 2.0, "points": 16, "rule": "midpoint",
            "density": "one",
        },
        "u0": {"builder": "gaussian", "width": 0.5, "amplitude": 2.0},
        "u1": {"builder": "indicator", "lo": 0.0, "hi": 1.0},
    }
    sc = scenario_from_dict(doc, origin="inline")
    assert len(sc.measure) == 16
    assert max(sc.u0.coeffs) <= 2.0
    assert set(sc.u1.coeffs) <= {0.0, 1.0}


def test_scenario_file_loading(tmp_path):
    doc = {
        "name": "from-file",
        "measure": {"builder": "explicit", "modes": [[1.0, 1.0]]},
        "u0": {"builder": "constant", "value": 1.0},
        "u1": {"builder": "zero"},
        "m_max": 1,
    }
    path = tmp_path / "sc.json"
    path.write_text(json.dumps(doc))
    sc = load_scenario(str(path))
    assert sc.name == "from-file"


def test_scenario_file_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_scenario(str(path))


def test_window_override():
    doc = {
        "name": "w",
        "measure": {"builder": "explicit", "modes": [[1.0, 1.0]]},
        "window": {"t_min": 5.0, "t_max": 500.0, "points": 17},
    }
    sc = scenario_from_dict(doc, origin="inline")
    assert sc.window.t_min == 5.0
    assert sc.window.t_max == 500.0
    grid = sc.window.fit_grid()
    assert len(grid) == 17
    assert grid[0] == pytest.approx(5.0)
    assert grid[-1] == pytest.approx(500.0)


def test_window_rejects_inverted():
    doc = {
        "name": "w",
        "measure": {"builder": "explicit", "modes": [[1.0, 1.0]]},
        "window": {"t_min": 50.0, "t_max": 5.0},
    }
    with pytest.raises(SchemaError, match="window"):
        scenario_from_dict(doc, origin="inline")


def test_time_grid_defaults():
    grid = TimeGrid()
    fit = grid.fit_grid()
    assert fit[0] == pytest.approx(10.0)
    assert fit[-1] == pytest.approx(1.0e3)
    sup = grid.sup_grid()
    assert sup[0] == 0.0
    assert sup[-1] == pytest.approx(1.0e4)
    assert len(sup) == 200


def test_checks_filter_round_trips():
    doc = {
        "name": "c",
        "measure": {"builder": "explicit", "modes": [[1.0, 1.0]]},
        "checks": ["energy-balance", "profile-recursion"],
    }
    sc = scenario_from_dict(doc, origin="inline")
    assert sc.checks == ("energy-balance", "profile-recursion")
