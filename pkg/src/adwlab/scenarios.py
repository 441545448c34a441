"""Scenario configuration: measures, data and windows from JSON documents.

A scenario bundles a spectral measure, initial data (u0, u1), an expansion
depth and the time windows used by the verification checks.  Scenarios are
described by JSON documents; the built-in ones are expressed as documents
too, so the same validation path covers both.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .spectral import (
    ModalVector,
    SpectralMeasure,
    path_graph_measure,
    symbol_modes,
)

M_MAX_LIMIT = 8


class SchemaError(ValueError):
    """Scenario document violates the schema; pointer names the field."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


@dataclass(frozen=True)
class TimeGrid:
    """Fit window (log-spaced) plus the wider window used for sup scans."""

    t_min: float = 10.0
    t_max: float = 1.0e3
    points: int = 33
    sup_t_max: float = 1.0e4
    sup_points: int = 200

    def fit_grid(self) -> np.ndarray:
        return np.exp(
            np.linspace(math.log(1.0 + self.t_min), math.log(1.0 + self.t_max),
                        self.points)
        ) - 1.0

    def sup_grid(self) -> np.ndarray:
        return np.expm1(
            np.linspace(0.0, math.log1p(self.sup_t_max), self.sup_points)
        )


@dataclass(frozen=True)
class Scenario:
    """A measure with data, expansion depth and check windows."""

    name: str
    measure: SpectralMeasure
    u0: ModalVector
    u1: ModalVector
    m_max: int = 3
    window: TimeGrid = field(default_factory=TimeGrid)
    checks: tuple[str, ...] | None = None

    @property
    def v0(self) -> ModalVector:
        return self.u0 + self.u1


# -- symbols and data builders ---------------------------------------------

def _symbol_fn(kind: str, alpha: float) -> Callable[[float], float]:
    if kind == "wave":
        return lambda x: x * x
    if kind == "beam":
        return lambda x: x**4 + alpha * x * x
    raise KeyError(kind)


def _symbol_slope(kind: str, alpha: float) -> Callable[[float], float]:
    if kind == "wave":
        return lambda x: 2.0 * x
    if kind == "beam":
        return lambda x: 4.0 * x**3 + 2.0 * alpha * x
    raise KeyError(kind)


def _build_data(spec, grid: np.ndarray, pointer: str) -> np.ndarray:
    """Coefficients on the measure's grid (frequencies if available,
    otherwise the mode values themselves)."""
    if not isinstance(spec, dict):
        raise SchemaError(pointer, "data spec must be an object")
    builder = spec.get("builder")
    n = grid.size
    if builder == "zero":
        return np.zeros(n)
    if builder == "constant":
        value = spec.get("value", 1.0)
        if not isinstance(value, (int, float)):
            raise SchemaError(pointer + "/value", "must be a number")
        return np.full(n, float(value))
    if builder == "gaussian":
        width = spec.get("width", 1.0)
        amplitude = spec.get("amplitude", 1.0)
        if not isinstance(width, (int, float)) or width <= 0:
            raise SchemaError(pointer + "/width", "must be a positive number")
        if not isinstance(amplitude, (int, float)):
            raise SchemaError(pointer + "/amplitude", "must be a number")
        return float(amplitude) * np.exp(-((grid / float(width)) ** 2))
    if builder == "indicator":
        lo = spec.get("lo", 0.0)
        hi = spec.get("hi", 1.0)
        if not isinstance(lo, (int, float)) or not isinstance(hi, (int, float)):
            raise SchemaError(pointer, "indicator needs numeric lo/hi")
        return np.where((grid >= lo) & (grid <= hi), 1.0, 0.0)
    if builder == "random":
        seed = spec.get("seed", 0)
        if not isinstance(seed, int):
            raise SchemaError(pointer + "/seed", "must be an integer")
        rng = np.random.default_rng(seed)
        return rng.standard_normal(n)
    if builder == "explicit":
        coeffs = spec.get("coeffs")
        if not isinstance(coeffs, list) or not all(
            isinstance(c, (int, float)) for c in coeffs
        ):
            raise SchemaError(pointer + "/coeffs", "must be a list of numbers")
        if len(coeffs) != n:
            raise SchemaError(
                pointer + "/coeffs",
                f"has {len(coeffs)} entries, measure has {n} modes",
            )
        return np.array(coeffs, dtype=float)
    raise SchemaError(
        pointer + "/builder",
        f"unknown data builder {builder!r}; expected zero, constant, gaussian, "
        "indicator, random or explicit",
    )


def _build_measure(spec, pointer: str) -> tuple[SpectralMeasure, np.ndarray]:
    """Measure plus the grid the data builders act on."""
    if not isinstance(spec, dict):
        raise SchemaError(pointer, "measure spec must be an object")
    builder = spec.get("builder")
    if builder == "symbol":
        kind = spec.get("symbol")
        if kind not in ("wave", "beam"):
            raise SchemaError(pointer + "/symbol", "must be 'wave' or 'beam'")
        alpha = spec.get("alpha", 1.0)
        if not isinstance(alpha, (int, float)) or alpha < 0:
            raise SchemaError(pointer + "/alpha", "must be a nonnegative number")
        lo = spec.get("xi_min", 0.0)
        hi = spec.get("xi_max", 2.0)
        if not isinstance(lo, (int, float)) or not isinstance(hi, (int, float)) \
                or not hi > lo:
            raise SchemaError(pointer, "needs numeric xi_min < xi_max")
        points = spec.get("points", 256)
        if not isinstance(points, int) or points <= 0:
            raise SchemaError(pointer + "/points", "must be a positive integer")
        rule = spec.get("rule", "composite-gauss-legendre")
        density_name = spec.get("density", "one")
        if density_name == "one":
            density = None
        elif density_name == "uniform-lambda":
            # Weight d(lambda)/d(xi): turns the frequency quadrature into a
            # flat quadrature in the mode variable.
            density = _symbol_slope(kind, float(alpha))
        else:
            raise SchemaError(
                pointer + "/density", "must be 'one' or 'uniform-lambda'"
            )
        try:
            xs, lams, ws = symbol_modes(
                _symbol_fn(kind, float(alpha)), float(lo), float(hi),
                points, rule, density,
            )
        except ValueError as exc:
            raise SchemaError(pointer, str(exc)) from exc
        label = spec.get("label", f"{kind}-symbol")
        return SpectralMeasure(lams, ws, label=str(label)), xs
    if builder == "path-graph":
        n = spec.get("n")
        if not isinstance(n, int) or n <= 0:
            raise SchemaError(pointer + "/n", "must be a positive integer")
        measure = path_graph_measure(n)
        return measure, measure.lambdas
    if builder == "explicit":
        modes = spec.get("modes")
        if not isinstance(modes, list) or not modes:
            raise SchemaError(pointer + "/modes", "must be a non-empty list")
        for i, pair in enumerate(modes):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) for v in pair)
            ):
                raise SchemaError(
                    pointer + f"/modes/{i}", "must be a [lambda, weight] pair"
                )
        lams = np.array([m[0] for m in modes], dtype=float)
        ws = np.array([m[1] for m in modes], dtype=float)
        try:
            measure = SpectralMeasure(lams, ws, label=str(spec.get("label", "explicit")))
        except ValueError as exc:
            raise SchemaError(pointer + "/modes", str(exc)) from exc
        return measure, measure.lambdas
    raise SchemaError(
        pointer + "/builder",
        f"unknown measure builder {builder!r}; expected symbol, path-graph "
        "or explicit",
    )


def _build_window(spec, pointer: str) -> TimeGrid:
    if spec is None:
        return TimeGrid()
    if not isinstance(spec, dict):
        raise SchemaError(pointer, "window must be an object")
    grid = TimeGrid()
    numeric = {
        "t_min": float, "t_max": float, "points": int,
        "sup_t_max": float, "sup_points": int,
    }
    for key, typ in numeric.items():
        if key in spec:
            value = spec[key]
            if not isinstance(value, (int, float)) or (typ is int and not isinstance(value, int)):
                raise SchemaError(f"{pointer}/{key}", f"must be a {typ.__name__}")
            grid = replace(grid, **{key: typ(value)})
    if not (0.0 <= grid.t_min < grid.t_max):
        raise SchemaError(pointer, "needs 0 <= t_min < t_max")
    if grid.points < 8:
        raise SchemaError(pointer + "/points", "needs at least 8 fit samples")
    if grid.sup_points < 16 or grid.sup_t_max <= 0:
        raise SchemaError(pointer, "sup window needs sup_points >= 16, sup_t_max > 0")
    return grid


def scenario_from_dict(doc: dict, origin: str = "<dict>") -> Scenario:
    """Validate a scenario document and build the Scenario."""
    if not isinstance(doc, dict):
        raise SchemaError("", "scenario document must be an object")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaError("/name", "must be a non-empty string")
    if "measure" not in doc:
        raise SchemaError("/measure", "is required")
    measure, grid = _build_measure(doc["measure"], "/measure")
    u0 = _build_data(doc.get("u0", {"builder": "zero"}), grid, "/u0")
    u1 = _build_data(doc.get("u1", {"builder": "zero"}), grid, "/u1")
    m_max = doc.get("m_max", 3)
    if not isinstance(m_max, int) or not (0 <= m_max <= M_MAX_LIMIT):
        raise SchemaError("/m_max", f"must be an integer in [0, {M_MAX_LIMIT}]")
    window = _build_window(doc.get("window"), "/window")
    checks = doc.get("checks")
    if checks is not None:
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            raise SchemaError("/checks", "must be a list of check identifiers")
        checks = tuple(checks)
    return Scenario(
        name=name,
        measure=measure,
        u0=ModalVector(u0),
        u1=ModalVector(u1),
        m_max=m_max,
        window=window,
        checks=checks,
    )


# -- built-in scenarios -------------------------------------------------------

BUILTIN_DOCS: dict[str, dict] = {
    "wave-line": {
        "name": "wave-line",
        "measure": {
            "builder": "symbol",
            "symbol": "wave",
            "xi_min": 0.0,
            "xi_max": 2.0,
            "points": 256,
            "rule": "composite-gauss-legendre",
            # Flat density in the mode variable keeps the low-frequency
            # spectral density bounded above and below, which is what the
            # sharpened decay rates are calibrated against.
            "density": "uniform-lambda",
            "label": "wave-line",
        },
        "u0": {"builder": "gaussian"},
        "u1": {"builder": "gaussian"},
        "m_max": 3,
    },
    "beam": {
        "name": "beam",
        "measure": {
            "builder": "symbol",
            "symbol": "beam",
            "alpha": 1.0,
            "xi_min": 0.0,
            "xi_max": 2.0,
            "points": 256,
            "rule": "composite-gauss-legendre",
            "density": "one",
            "label": "beam",
        },
        "u0": {"builder": "gaussian"},
        "u1": {"builder": "gaussian"},
        "m_max": 2,
    },
    "path-graph-16": {
        "name": "path-graph-16",
        "measure": {"builder": "path-graph", "n": 16},
        "u0": {"builder": "gaussian"},
        "u1": {"builder": "constant", "value": 1.0},
        "m_max": 3,
    },
    "zero-mode": {
        "name": "zero-mode",
        "measure": {"builder": "explicit", "modes": [[0.0, 1.0]], "label": "zero-mode"},
        "u0": {"builder": "explicit", "coeffs": [0.0]},
        "u1": {"builder": "explicit", "coeffs": [1.0]},
        "m_max": 4,
    },
    "gap": {
        "name": "gap",
        "measure": {"builder": "explicit", "modes": [[1.0, 1.0]], "label": "gap"},
        "u0": {"builder": "explicit", "coeffs": [1.0]},
        "u1": {"builder": "explicit", "coeffs": [1.0]},
        "m_max": 3,
    },
}

BUILTIN_SUMMARIES = {
    "wave-line": "wave symbol xi^2 on [0, 2], 256-point composite quadrature",
    "beam": "beam symbol xi^4 + xi^2 on [0, 2], 256-point composite quadrature",
    "path-graph-16": "path-graph Laplacian on 16 vertices (discrete, zero mode)",
    "zero-mode": "single mode at lambda = 0 driven by u1",
    "gap": "single mode at lambda = 1 (spectral gap, oscillatory roots)",
}


def builtin_names() -> list[str]:
    return sorted(BUILTIN_DOCS)


def load_scenario(name_or_path: str) -> Scenario:
    """Load a built-in scenario by name or a JSON scenario file by path."""
    if name_or_path in BUILTIN_DOCS:
        return scenario_from_dict(BUILTIN_DOCS[name_or_path], origin=name_or_path)
    if os.path.exists(name_or_path):
        with open(name_or_path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError("", f"invalid JSON in {name_or_path}: {exc}") from exc
        return scenario_from_dict(doc, origin=name_or_path)
    names = ", ".join(builtin_names())
    raise ValueError(
        f"unknown scenario {name_or_path!r}; built-in scenarios are: {names}"
    )
