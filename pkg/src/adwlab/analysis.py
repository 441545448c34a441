"""Energy functionals, semigroup identities and decay-rate estimation.

Everything here consumes closed-form modal states (lists of exponential
polynomials against a spectral measure), so the identity checks compare an
exactly integrated left side with an exactly computed right side; only the
decay-rate fits and windowed tail checks are genuinely numerical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .exppoly import ExpPoly
from .spectral import ModalVector, SpectralMeasure, _check_conformal


class WindowError(ValueError):
    """Sample window is unusable for the requested estimate."""


class CannotFitError(ValueError):
    """Values admit no log-log fit (too few, nonpositive, or degenerate)."""


@dataclass(frozen=True)
class EnergyReport:
    """Pointwise energy functionals of a modal state."""

    t: float
    energy: float          # |u'|^2 + |A^(1/2) u|^2
    energy_star: float     # |u|^2 + 2 (u, u')
    l2: float              # |u|^2


def _state_values(state: Sequence[ExpPoly], t: float):
    return [u(t) for u in state]


def energy(measure: SpectralMeasure, state: Sequence[ExpPoly], t: float) -> EnergyReport:
    """Evaluate the energy functionals at time t."""
    if len(state) != len(measure):
        raise ValueError(
            f"state has {len(state)} modes, measure has {len(measure)}"
        )
    e_terms, star_terms, l2_terms = [], [], []
    for lam, w, u in zip(measure.lambdas, measure.weights, state):
        a = u(t)
        b = u.derivative()(t)
        e_terms.append(w * (abs(b) ** 2 + lam * abs(a) ** 2))
        star_terms.append(w * (abs(a) ** 2 + 2.0 * (a * b.conjugate()).real))
        l2_terms.append(w * abs(a) ** 2)
    return EnergyReport(
        t=float(t),
        energy=math.fsum(e_terms),
        energy_star=math.fsum(star_terms),
        l2=math.fsum(l2_terms),
    )


def energy_curve(
    measure: SpectralMeasure, state: Sequence[ExpPoly], ts: Sequence[float]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Energy, starred energy and squared norm over a grid of times."""
    if len(state) != len(measure):
        raise ValueError(
            f"state has {len(state)} modes, measure has {len(measure)}"
        )
    arr = np.asarray(ts, dtype=float)
    e = np.zeros(arr.shape)
    star = np.zeros(arr.shape)
    l2 = np.zeros(arr.shape)
    for lam, w, u in zip(measure.lambdas, measure.weights, state):
        a = u.eval_grid(arr)
        b = u.derivative().eval_grid(arr)
        aa = a.real**2 + a.imag**2
        bb = b.real**2 + b.imag**2
        e += w * (bb + lam * aa)
        star += w * (aa + 2.0 * (a * b.conjugate()).real)
        l2 += w * aa
    return e, star, l2


def state_norm(
    measure: SpectralMeasure, state: Sequence[ExpPoly], t: float, s: float = 0.0
) -> float:
    """Norm of A^s applied to a closed-form state at time t."""
    if len(state) != len(measure):
        raise ValueError(
            f"state has {len(state)} modes, measure has {len(measure)}"
        )
    terms = []
    for lam, w, u in zip(measure.lambdas, measure.weights, state):
        if s == 0:
            factor = 1.0
        elif lam == 0:
            continue
        else:
            factor = lam ** (2.0 * s)
        terms.append(w * factor * abs(u(t)) ** 2)
    return math.sqrt(math.fsum(terms))


def state_norm_curve(
    measure: SpectralMeasure, state: Sequence[ExpPoly], ts: Sequence[float],
    s: float = 0.0,
) -> np.ndarray:
    """Vectorized state norm over a grid of times."""
    arr = np.asarray(ts, dtype=float)
    total = np.zeros(arr.shape)
    for lam, w, u in zip(measure.lambdas, measure.weights, state):
        if s == 0:
            factor = 1.0
        elif lam == 0:
            continue
        else:
            factor = lam ** (2.0 * s)
        vals = u.eval_grid(arr)
        total += w * factor * (vals.real**2 + vals.imag**2)
    return np.sqrt(total)


class MaxRegIdentity(NamedTuple):
    lhs: float
    rhs: float
    correction_sum: float


def max_reg_identity(
    measure: SpectralMeasure, f: ModalVector, n: int, t: float
) -> MaxRegIdentity:
    """Weighted maximal-regularity balance of the heat semigroup at order n.

    With w(s) = e^(-sA) f the identity reads

        |w(t)|^2 / 2
        + (1/2) sum_{k=0}^{n-1} (2t)^(k+1)/(k+1)! |A^((k+1)/2) w(t)|^2
        + (2^n / n!) int_0^t s^n |A^((n+1)/2) w(s)|^2 ds  =  |f|^2 / 2.

    Returns (lhs, rhs, correction_sum) where correction_sum is the middle
    sum: the part that separates the order-n balance from the plain n = 0
    energy split.  It vanishes for n = 0 and is nonnegative otherwise.
    The time integral is evaluated in closed form, so the balance holds to
    rounding error.
    """
    _check_conformal(measure, f)
    if n < 0:
        raise ValueError("order must be >= 0")
    if t < 0:
        raise ValueError("time must be >= 0")
    head, mids, tails, total = [], [], [], []
    for lam, w, c in zip(measure.lambdas, measure.weights, f.coeffs):
        lam = float(lam)
        c2 = float(c) * float(c)
        decay = ExpPoly.exponential(1.0, -2.0 * lam)
        e2 = decay(t).real
        head.append(0.5 * w * c2 * e2)
        for k in range(n):
            mids.append(
                0.5 * w * (2.0 * t) ** (k + 1) / math.factorial(k + 1)
                * lam ** (k + 1) * c2 * e2
            )
        integral = ExpPoly.monomial(1.0, n, -2.0 * lam).definite_integral(t).real
        tails.append(
            (2.0**n / math.factorial(n)) * w * lam ** (n + 1) * c2 * integral
        )
        total.append(0.5 * w * c2)
    correction = math.fsum(mids)
    lhs = math.fsum(head) + correction + math.fsum(tails)
    return MaxRegIdentity(lhs=lhs, rhs=math.fsum(total), correction_sum=correction)


def semigroup_tail_curve(
    measure: SpectralMeasure, f: ModalVector, n: int
) -> Callable[[float], float]:
    """The curve s -> |A^((n+1)/2) e^(-sA) f|^2 as a plain callable."""
    _check_conformal(measure, f)
    lams = measure.lambdas
    ws = measure.weights
    cs = f.coeffs

    def curve(s: float) -> float:
        with np.errstate(under="ignore"):
            powers = np.where(lams > 0, lams, 1.0) ** (n + 1)
            powers = np.where(lams > 0, powers, 0.0)
            return float(np.sum(ws * powers * cs**2 * np.exp(-2.0 * lams * s)))

    return curve


class TailCheck(NamedTuple):
    finite: bool
    value: float
    t_at: float | None = None
    error_estimate: float | None = None


def _log_grid(t_max: float, points: int) -> np.ndarray:
    return np.expm1(np.linspace(0.0, math.log1p(t_max), points))


def weighted_tail_check(
    curve: Callable[[float], float],
    weight_exponent: float,
    mode: str = "supremum",
    window: tuple[float, float] = (0.0, 1.0e4),
    points: int = 200,
    quad_tol: float = 1.0e-8,
) -> TailCheck:
    """Certify boundedness or integrability of (1+t)^p * curve(t).

    Supremum mode scans a log-spaced grid over the window and reports the
    maximum; the result counts as finite when the weighted tail over the
    last decade does not grow (monotone decrease, a plateau, or saturation
    toward a limit all qualify).  Integral mode integrates the weighted
    curve over the window by composite Simpson quadrature in log(1+t) with
    Richardson refinement; finite means the refinement converged.
    """
    lo, hi = window
    if not (hi > lo >= 0.0):
        raise WindowError(f"window must satisfy 0 <= lo < hi, got {window}")
    p = float(weight_exponent)

    def weighted(t: float) -> float:
        v = float(curve(t))
        if not math.isfinite(v):
            raise ValueError(f"curve is not finite at t={t!r}")
        return (1.0 + t) ** p * v

    if mode == "supremum":
        if points < 16:
            raise WindowError("supremum scan needs at least 16 grid points")
        ts = lo + _log_grid(hi - lo, points)
        vals = np.array([weighted(t) for t in ts])
        idx = int(np.argmax(vals))
        value = float(vals[idx])
        tail_start = hi / 10.0
        tail = vals[ts >= tail_start]
        if tail.size < 2:
            tail = vals[-2:]
        finite = bool(tail[-1] <= tail[0] * (1.0 + 1.0e-3) + 1.0e-300)
        return TailCheck(finite=finite, value=value, t_at=float(ts[idx]))
    if mode == "integral":
        x_hi = math.log1p(hi - lo)

        def integrand(x: float) -> float:
            t = lo + math.expm1(x)
            return weighted(t) * (1.0 + (t - lo))

        def simpson(n_panels: int) -> float:
            xs = np.linspace(0.0, x_hi, 2 * n_panels + 1)
            ys = np.array([integrand(x) for x in xs])
            h = x_hi / (2 * n_panels)
            return float(h / 3.0 * (ys[0] + ys[-1] + 4.0 * ys[1::2].sum()
                                    + 2.0 * ys[2:-1:2].sum()))

        n_panels = 256
        coarse = simpson(n_panels)
        converged = False
        err = math.inf
        fine = coarse
        while n_panels <= 8192:
            n_panels *= 2
            fine = simpson(n_panels)
            err = abs(fine - coarse) / 15.0
            if err <= quad_tol * (1.0 + abs(fine)):
                converged = True
                break
            coarse = fine
        return TailCheck(finite=converged, value=fine, error_estimate=err)
    raise ValueError(f"unknown tail-check mode {mode!r}")


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of log(value) against log(1+t)."""

    slope: float
    intercept: float
    max_abs_residual: float
    window: tuple[float, float]
    sample_count: int


def fit_decay(samples: Sequence[tuple[float, float]]) -> DecayFit:
    """Fit value ~ C (1+t)^slope on a sample list [(t, value), ...].

    Needs at least 8 samples spanning 1.5 decades of (1+t) with strictly
    positive values.
    """
    if len(samples) < 8:
        raise CannotFitError(f"need at least 8 samples, got {len(samples)}")
    ts = np.array([s[0] for s in samples], dtype=float)
    vs = np.array([s[1] for s in samples], dtype=float)
    if np.any(ts < 0):
        raise WindowError("sample times must be >= 0")
    if np.any(~np.isfinite(vs)) or np.any(vs <= 0):
        raise CannotFitError("samples must be finite and strictly positive")
    span = math.log10((1.0 + ts.max()) / (1.0 + ts.min()))
    if span < 1.5:
        raise WindowError(
            f"samples span {span:.2f} decades of (1+t); need at least 1.5"
        )
    xs = np.log(1.0 + ts)
    ys = np.log(vs)
    slope, intercept = np.polyfit(xs, ys, 1)
    residuals = ys - (slope * xs + intercept)
    return DecayFit(
        slope=float(slope),
        intercept=float(intercept),
        max_abs_residual=float(np.max(np.abs(residuals))),
        window=(float(ts.min()), float(ts.max())),
        sample_count=len(samples),
    )
