"""Discrete spectral measures for nonnegative selfadjoint operators.

The operator is represented by a finite list of modes (lambda_k, w_k):
eigenvalue-like points with positive quadrature weights.  A vector is a
coefficient array against those modes, functional calculus acts mode by
mode, and fractional-power norms are weighted sums.  Continuous spectra
enter through quadrature discretizations of a symbol lambda = a(xi).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

MEASURE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SpectralMeasure:
    """Sorted nonnegative modes with positive weights."""

    lambdas: np.ndarray
    weights: np.ndarray
    label: str = ""

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float).copy()
        w = np.asarray(self.weights, dtype=float).copy()
        if lam.ndim != 1 or w.ndim != 1 or lam.shape != w.shape:
            raise ValueError("lambdas and weights must be 1-d arrays of equal length")
        if lam.size == 0:
            raise ValueError("measure needs at least one mode")
        if not np.all(np.isfinite(lam)) or not np.all(np.isfinite(w)):
            raise ValueError("modes must be finite")
        if np.any(lam < 0):
            raise ValueError(f"negative mode value {lam[lam < 0][0]!r}")
        if np.any(w <= 0):
            raise ValueError(f"nonpositive weight {w[w <= 0][0]!r}")
        if np.any(np.diff(lam) < 0):
            raise ValueError("modes must be sorted ascending")
        lam.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return int(self.lambdas.size)

    @property
    def modes(self) -> list[tuple[float, float]]:
        return [(float(l), float(w)) for l, w in zip(self.lambdas, self.weights)]


@dataclass(frozen=True)
class ModalVector:
    """Coefficients against the modes of an owning measure."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).copy()
        if c.ndim != 1:
            raise ValueError("coefficients must be a 1-d array")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __len__(self) -> int:
        return int(self.coeffs.size)

    def __add__(self, other: "ModalVector") -> "ModalVector":
        return ModalVector(self.coeffs + other.coeffs)

    def __sub__(self, other: "ModalVector") -> "ModalVector":
        return ModalVector(self.coeffs - other.coeffs)

    def scaled(self, factor: float) -> "ModalVector":
        return ModalVector(self.coeffs * factor)


def _check_conformal(measure: SpectralMeasure, vec: ModalVector) -> None:
    if len(vec) != len(measure):
        raise ValueError(
            f"vector has {len(vec)} coefficients, measure has {len(measure)} modes"
        )


# -- quadrature grids -------------------------------------------------------

def quadrature_grid(lo: float, hi: float, n: int, rule: str = "gauss-legendre"):
    """Nodes and weights for integration over [lo, hi].

    Rules: 'midpoint', 'gauss-legendre' (single panel), and
    'composite-gauss-legendre' (panels of 8 nodes; n divisible by 8).
    """
    if not (hi > lo):
        raise ValueError(f"empty grid interval [{lo}, {hi}]")
    if n <= 0:
        raise ValueError(f"grid needs a positive point count, got {n}")
    if rule == "midpoint":
        h = (hi - lo) / n
        xs = lo + h * (np.arange(n) + 0.5)
        ws = np.full(n, h)
    elif rule == "gauss-legendre":
        xs01, ws01 = np.polynomial.legendre.leggauss(n)
        xs = 0.5 * (hi - lo) * xs01 + 0.5 * (hi + lo)
        ws = 0.5 * (hi - lo) * ws01
    elif rule == "composite-gauss-legendre":
        per = 8
        if n % per != 0:
            raise ValueError(f"composite rule needs a multiple of {per} points, got {n}")
        panels = n // per
        xs01, ws01 = np.polynomial.legendre.leggauss(per)
        edges = np.linspace(lo, hi, panels + 1)
        xs_list, ws_list = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            xs_list.append(0.5 * (b - a) * xs01 + 0.5 * (b + a))
            ws_list.append(0.5 * (b - a) * ws01)
        xs = np.concatenate(xs_list)
        ws = np.concatenate(ws_list)
    else:
        raise ValueError(f"unknown quadrature rule {rule!r}")
    return xs, ws


def symbol_modes(
    symbol: Callable[[float], float],
    lo: float,
    hi: float,
    n: int,
    rule: str = "gauss-legendre",
    density: Callable[[float], float] | None = None,
):
    """Sorted (frequencies, mode values, weights) for a symbol on a grid.

    Weight_k is the quadrature weight times the density at the node.  The
    triple is sorted jointly by mode value so callers can build matching
    coefficient data on the frequency grid.
    """
    xs, ws = quadrature_grid(lo, hi, n, rule)
    lams = np.array([float(symbol(x)) for x in xs])
    for x, l in zip(xs, lams):
        if not math.isfinite(l):
            raise ValueError(f"symbol is not finite at xi={x!r}")
        if l < 0:
            raise ValueError(f"symbol is negative at xi={x!r}")
    if density is not None:
        dens = np.array([float(density(x)) for x in xs])
        if np.any(~np.isfinite(dens)) or np.any(dens <= 0):
            bad = xs[~(np.isfinite(dens) & (dens > 0))][0]
            raise ValueError(f"density must be positive and finite, fails at xi={bad!r}")
        ws = ws * dens
    order = np.argsort(lams, kind="stable")
    return xs[order], lams[order], ws[order]


def build_symbol_measure(
    symbol: Callable[[float], float],
    lo: float,
    hi: float,
    n: int,
    rule: str = "gauss-legendre",
    density: Callable[[float], float] | None = None,
    label: str = "",
) -> SpectralMeasure:
    """Discretize the multiplication operator with the given symbol."""
    _, lams, ws = symbol_modes(symbol, lo, hi, n, rule, density)
    return SpectralMeasure(lams, ws, label=label)


def path_graph_measure(n: int, label: str | None = None) -> SpectralMeasure:
    """Laplacian spectrum of the path graph on n vertices, unit weights.

    Eigenvalues 2 - 2 cos(k pi / n) for k = 0..n-1; the zero mode is always
    present.
    """
    if n <= 0:
        raise ValueError(f"path graph needs at least one vertex, got {n}")
    ks = np.arange(n)
    lams = 2.0 - 2.0 * np.cos(ks * np.pi / n)
    lams[0] = 0.0
    return SpectralMeasure(lams, np.ones(n), label=label or f"path-graph-{n}")


# -- functional calculus and norms -------------------------------------------

def apply_spectral_function(
    measure: SpectralMeasure, vec: ModalVector, phi: Callable[[float], float]
) -> ModalVector:
    """Apply phi(A) mode by mode."""
    _check_conformal(measure, vec)
    factors = np.array([float(phi(l)) for l in measure.lambdas])
    if not np.all(np.isfinite(factors)):
        bad = measure.lambdas[~np.isfinite(factors)][0]
        raise ValueError(f"spectral function not finite at lambda={bad!r}")
    return ModalVector(vec.coeffs * factors)


def _power_factors(measure: SpectralMeasure, s: float) -> np.ndarray:
    # lambda**(2s) with the 0**0 := 1 convention at s = 0.
    if s == 0:
        return np.ones(len(measure))
    with np.errstate(divide="ignore"):
        out = np.where(measure.lambdas > 0, measure.lambdas, 1.0) ** (2.0 * s)
    return np.where(measure.lambdas > 0, out, 0.0)


def sobolev_norm(measure: SpectralMeasure, vec: ModalVector, s: float = 0.0) -> float:
    """Norm of A^s applied to the vector: sqrt(sum w lambda^(2s) c^2)."""
    _check_conformal(measure, vec)
    factors = _power_factors(measure, s)
    total = math.fsum(
        float(w * f * c * c)
        for w, f, c in zip(measure.weights, factors, vec.coeffs)
    )
    return math.sqrt(total)


def modal_inner(
    measure: SpectralMeasure, f: ModalVector, g: ModalVector, s: float = 0.0
) -> float:
    """Inner product (A^s f, A^s g) against the measure."""
    _check_conformal(measure, f)
    _check_conformal(measure, g)
    factors = _power_factors(measure, s)
    return math.fsum(
        float(w * fac * a * b)
        for w, fac, a, b in zip(measure.weights, factors, f.coeffs, g.coeffs)
    )


# -- serialization ------------------------------------------------------------

def measure_to_json(measure: SpectralMeasure) -> dict:
    return {
        "version": MEASURE_SCHEMA_VERSION,
        "label": measure.label,
        "modes": [[float(l), float(w)] for l, w in measure.modes],
    }


def measure_from_json(doc: dict) -> SpectralMeasure:
    if not isinstance(doc, dict):
        raise ValueError("measure document must be an object")
    version = doc.get("version")
    if version != MEASURE_SCHEMA_VERSION:
        raise ValueError(f"unsupported measure schema version {version!r}")
    modes = doc.get("modes")
    if not isinstance(modes, list) or not modes:
        raise ValueError("measure document needs a non-empty 'modes' list")
    lams = [m[0] for m in modes]
    ws = [m[1] for m in modes]
    return SpectralMeasure(np.array(lams, float), np.array(ws, float),
                           label=str(doc.get("label", "")))


def save_measure(measure: SpectralMeasure, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(measure_to_json(measure), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_measure(path: str) -> SpectralMeasure:
    with open(path, encoding="utf-8") as fh:
        return measure_from_json(json.load(fh))
