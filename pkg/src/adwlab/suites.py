"""Verification suites: scenario-driven checks with JSON reports.

Each check certifies one stated property of the damped-wave expansion
machinery (an identity, a recursion, a decay rate, or an exact coefficient
table) on a scenario's measure and data.  Results are plain records
{check, scenario, params, status, value, tolerance, anchor}; anchors name
the verified statement, one per check identifier.
"""

from __future__ import annotations

import json
import math
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Sequence

import numpy as np

from . import analysis, profiles, series
from .exppoly import ExpPoly
from .modal import ModalSolution, remainder_chain, solve_damped_mode
from .scenarios import Scenario
from .spectral import sobolev_norm

COEF_TOL = 1.0e-10          # canonical-zero threshold, relative to coefficient scale
VALUE_TOL = 1.0e-10         # pointwise identity tolerance, relative to data scale
SLOPE_MARGIN = 0.1          # slack added to the guaranteed decay exponent
SUPER_POLY_SLOPE = -10.0    # steeper fits are reported as super-polynomial
VALUE_FLOOR = 1.0e-280      # below this the log-log fit is meaningless

# Exp-polynomial chain solutions carry coefficients of size ~1/gap where
# gap = |mu_plus + lambda| is the distance between the slow root and the
# profile rate.  Below this floor the representation cannot hold the
# initial-data-sized components in float64, so coefficient-level chain
# identities are certified only on modes above it (exact resonance is fine:
# the resonant solver never divides by the gap).  The decay checks cover
# every mode through the stable expansion-error form instead.
CHAIN_GAP_FLOOR = 1.0e-5

THREADS_ENV = "ADWLAB_THREADS"


def _env_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


class ScenarioContext:
    """Lazy per-scenario cache of modal solutions and remainder chains."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self._lock = threading.Lock()
        self._solutions: list[ModalSolution] | None = None
        self._chains: dict[int, list[list[ModalSolution]]] = {}
        self._errors: dict[int, list[ExpPoly]] = {}

    @property
    def measure(self):
        return self.scenario.measure

    def solutions(self) -> list[ModalSolution]:
        with self._lock:
            if self._solutions is None:
                s = self.scenario
                self._solutions = [
                    solve_damped_mode(float(lam), float(a), float(b))
                    for lam, a, b in zip(
                        s.measure.lambdas, s.u0.coeffs, s.u1.coeffs
                    )
                ]
            return self._solutions

    def state(self) -> list[ExpPoly]:
        return [sol.u for sol in self.solutions()]

    def chains(self, depth: int) -> list[list[ModalSolution]]:
        """Remainder chains [W_1..W_depth] for every mode."""
        with self._lock:
            have = max(self._chains, default=0)
            if depth > have:
                s = self.scenario
                self._chains[depth] = [
                    remainder_chain(float(lam), float(a + b), float(b), depth - 1)
                    for lam, a, b in zip(
                        s.measure.lambdas, s.u0.coeffs, s.u1.coeffs
                    )
                ]
            key = min(k for k in self._chains if k >= depth)
            return [chain[:depth] for chain in self._chains[key]]

    def expansion_errors(self, m: int) -> list[ExpPoly]:
        with self._lock:
            if m not in self._errors:
                s = self.scenario
                self._errors[m] = profiles.modal_expansion_errors(
                    s.measure, s.u0, s.u1, m
                )
            return self._errors[m]


def _record(check, scenario, params, status, value, tolerance, anchor) -> dict:
    return {
        "check": check,
        "scenario": scenario,
        "params": params,
        "status": status,
        "value": value,
        "tolerance": tolerance,
        "anchor": anchor,
    }


def _pass(flag: bool) -> str:
    return "pass" if flag else "fail"


# -- identity checks ---------------------------------------------------------

def _check_energy_decay(ctx: ScenarioContext) -> list[dict]:
    anchor = "energy dissipation law"
    s = ctx.scenario
    ts = np.expm1(np.linspace(0.0, math.log1p(50.0), 40))
    e, _, _ = analysis.energy_curve(s.measure, ctx.state(), ts)
    scale = max(e[0], 1e-300)
    increases = float(np.max(np.diff(e))) if len(e) > 1 else 0.0
    ok = increases <= VALUE_TOL * scale
    return [
        _record("energy-decay-law", s.name, {"t_max": 50.0, "points": 40},
                _pass(ok), increases / scale, VALUE_TOL, anchor)
    ]


def _check_energy_balance(ctx: ScenarioContext) -> list[dict]:
    anchor = "energy balance identity"
    s = ctx.scenario
    state = ctx.state()
    e0 = analysis.energy(s.measure, state, 0.0).energy
    scale = max(e0, 1e-300)
    records = []
    for t in (0.5, 1.0, 5.0, 20.0):
        e_t = analysis.energy(s.measure, state, t).energy
        dissipated = math.fsum(
            2.0 * w
            * (u.derivative() * u.derivative().conjugate()).definite_integral(t).real
            for w, u in zip(s.measure.weights, state)
        )
        gap = abs(e_t + dissipated - e0) / scale
        records.append(
            _record("energy-balance", s.name, {"t": t}, _pass(gap <= VALUE_TOL),
                    gap, VALUE_TOL, anchor)
        )
    return records


def _check_semigroup_balance(ctx: ScenarioContext) -> list[dict]:
    anchor = "heat maximal-regularity balance"
    s = ctx.scenario
    f = s.v0
    norm_sq = sobolev_norm(s.measure, f) ** 2
    scale = max(norm_sq, 1e-300)
    records = []
    for n in range(5):
        worst = 0.0
        correction_ok = True
        for t in (0.0, 0.5, 1.0, 5.0, 20.0):
            res = analysis.max_reg_identity(s.measure, f, n, t)
            worst = max(worst, abs(res.lhs - res.rhs) / scale)
            if res.correction_sum < -VALUE_TOL * scale:
                correction_ok = False
            if n == 0 and res.correction_sum != 0.0:
                correction_ok = False
        ok = worst <= VALUE_TOL and correction_ok
        records.append(
            _record("semigroup-balance", s.name, {"n": n}, _pass(ok),
                    worst, VALUE_TOL, anchor)
        )
    return records


def _check_semigroup_integral(ctx: ScenarioContext) -> list[dict]:
    anchor = "weighted heat smoothing integral"
    s = ctx.scenario
    f = s.v0
    records = []
    for n in range(5):
        curve = analysis.semigroup_tail_curve(s.measure, f, n)
        result = analysis.weighted_tail_check(
            curve, n, mode="integral", window=(0.0, s.window.sup_t_max)
        )
        data_scale = (
            sobolev_norm(s.measure, f) ** 2
            + sobolev_norm(s.measure, f, n / 2.0) ** 2
        )
        records.append(
            _record(
                "semigroup-weighted-integral", s.name,
                {"n": n, "data_scale": data_scale},
                _pass(result.finite), result.value, None, anchor,
            )
        )
    return records


def _sup_record(check, ctx, params, curve_vals, anchor) -> dict:
    """Grid supremum with a non-growing tail requirement."""
    s = ctx.scenario
    vals = np.asarray(curve_vals)
    value = float(np.max(vals))
    ts = s.window.sup_grid()
    tail_start = s.window.sup_t_max / 10.0
    tail = vals[ts >= tail_start]
    if tail.size < 2:
        tail = vals[-2:]
    finite = bool(tail[-1] <= tail[0] * (1.0 + 1.0e-3) + 1.0e-300)
    return _record(check, s.name, params, _pass(finite), value, None, anchor)


def _check_state_bound(ctx: ScenarioContext) -> list[dict]:
    anchor = "zeroth-order decay bound"
    s = ctx.scenario
    ts = s.window.sup_grid()
    e, _, l2 = analysis.energy_curve(s.measure, ctx.state(), ts)
    weighted = (1.0 + ts) * e + l2
    return [_sup_record("state-bound", ctx, {}, weighted, anchor)]


def _check_first_remainder(ctx: ScenarioContext) -> list[dict]:
    anchor = "first remainder energy bound"
    s = ctx.scenario
    w1 = [chain[0].u for chain in ctx.chains(1)]
    ts = s.window.sup_grid()
    e, _, l2 = analysis.energy_curve(s.measure, w1, ts)
    weighted = (1.0 + ts) * e + l2
    records = [_sup_record("first-remainder-bound", ctx, {"part": "sup"}, weighted,
                           anchor)]
    w1_prime = [u.derivative() for u in w1]

    def speed_sq(t: float) -> float:
        return analysis.state_norm(s.measure, w1_prime, t) ** 2

    def half_norm_sq(t: float) -> float:
        return analysis.state_norm(s.measure, w1, t, s=0.5) ** 2

    for part, exponent, curve in (
        ("speed-integral", 1.0, speed_sq),
        ("half-power-integral", 0.0, half_norm_sq),
    ):
        result = analysis.weighted_tail_check(
            curve, exponent, mode="integral", window=(0.0, s.window.sup_t_max)
        )
        records.append(
            _record("first-remainder-bound", s.name, {"part": part},
                    _pass(result.finite), result.value, None, anchor)
        )
    return records


# -- recursion checks ----------------------------------------------------------

def _data_triples(ctx: ScenarioContext):
    s = ctx.scenario
    return zip(s.measure.lambdas, s.u0.coeffs, s.u1.coeffs)


def _chain_conditioned(lam: float) -> bool:
    from .exppoly import RATE_TOL
    from .modal import char_roots

    gap = abs(char_roots(lam).mu_plus + lam)
    return gap >= CHAIN_GAP_FLOOR or gap <= RATE_TOL


def _check_profile_recursion(ctx: ScenarioContext) -> list[dict]:
    anchor = "profile succession law"
    s = ctx.scenario
    records = []
    for m in range(s.m_max + 1):
        worst = 0.0
        initial_ok = True
        for lam, a, b in _data_triples(ctx):
            v0 = float(a + b)
            res = profiles.recursion_residual(m, float(lam), v0, float(b))
            scale = max(
                profiles.profile(m + 1, float(lam), v0, float(b)).max_coef(),
                abs(v0), abs(b), 1e-300,
            )
            worst = max(worst, res.max_coef() / scale)
            start = profiles.profile(m + 1, float(lam), v0, float(b))(0.0)
            if start != complex((-1.0) ** (m + 1) * b):
                initial_ok = False
        ok = worst <= COEF_TOL and initial_ok
        records.append(
            _record("profile-recursion", s.name, {"m": m}, _pass(ok), worst,
                    COEF_TOL, anchor)
        )
    return records


def _check_profile_derivative(ctx: ScenarioContext) -> list[dict]:
    anchor = "profile derivative closure"
    s = ctx.scenario
    depth = min(s.m_max + 1, 5)
    records = []
    for m in range(1, depth + 1):
        worst = 0.0
        for ell in range(1, depth + 1):
            for lam, a, b in _data_triples(ctx):
                v0 = float(a + b)
                left = profiles.profile(m, float(lam), v0, float(b)).derivative(ell)
                right = profiles.shifted_profile(
                    m, ell, float(lam), v0, float(b)
                ).scaled((-float(lam)) ** ell)
                scale = max(left.max_coef(), right.max_coef(), 1e-300)
                worst = max(worst, (left - right).max_coef() / scale)
        records.append(
            _record("profile-derivative", s.name, {"m": m, "ell_max": depth},
                    _pass(worst <= COEF_TOL), worst, COEF_TOL, anchor)
        )
    return records


def _check_expansion_consistency(ctx: ScenarioContext) -> list[dict]:
    anchor = "expansion/profile consistency"
    s = ctx.scenario
    depth = min(s.m_max + 2, 6)
    worst = 0.0
    for ell in range(depth + 1):
        for lam, a, b in _data_triples(ctx):
            v0 = float(a + b)
            left = profiles.asymptotic_profile(ell, float(lam), v0, float(b))
            if ell == 0:
                right = profiles.profile(0, float(lam), v0, float(b))
            else:
                right = profiles.shifted_profile(
                    ell, ell, float(lam), v0, float(b)
                ).scaled((-float(lam)) ** ell)
            scale = max(left.max_coef(), right.max_coef(), 1e-300)
            worst = max(worst, (left - right).max_coef() / scale)
    return [
        _record("expansion-consistency", s.name, {"ell_max": depth},
                _pass(worst <= COEF_TOL), worst, COEF_TOL, anchor)
    ]


def _check_first_decomposition(ctx: ScenarioContext) -> list[dict]:
    anchor = "first-order solution split"
    s = ctx.scenario
    worst = 0.0
    for sol, chain in zip(ctx.solutions(), ctx.chains(1)):
        lam = sol.lam
        a, b = sol.initial
        rebuilt = profiles.profile(0, lam, a + b, b) + chain[0].u.derivative()
        # W_1 carries coefficients ~v0/lam near lam = 0; residues below
        # eps * that magnitude are unresolvable, so they set the scale.
        scale = max(sol.u.max_coef(), rebuilt.max_coef(),
                    chain[0].u.max_coef(), 1e-300)
        worst = max(worst, (sol.u - rebuilt).max_coef() / scale)
    return [
        _record("first-decomposition", s.name, {}, _pass(worst <= COEF_TOL),
                worst, COEF_TOL, anchor)
    ]


def _check_chain_decomposition(ctx: ScenarioContext) -> list[dict]:
    anchor = "remainder chain split"
    s = ctx.scenario
    depth = min(s.m_max, 4)
    chains = ctx.chains(depth + 1)
    usable = [_chain_conditioned(sol.lam) for sol in ctx.solutions()]
    records = []
    for k in range(1, depth + 1):
        worst = 0.0
        for sol, chain, ok in zip(ctx.solutions(), chains, usable):
            if not ok:
                continue
            lam = sol.lam
            a, b = sol.initial
            left = chain[k - 1].u
            right = profiles.profile(k, lam, a + b, b) + chain[k].u.derivative()
            scale = max(left.max_coef(), right.max_coef(), 1e-300)
            worst = max(worst, (left - right).max_coef() / scale)
        params = {"k": k, "modes": sum(usable), "skipped": len(usable) - sum(usable)}
        records.append(
            _record("chain-decomposition", s.name, params,
                    _pass(worst <= COEF_TOL), worst, COEF_TOL, anchor)
        )
    return records


def _remainder_derivatives_at_zero(lam, v0, u1, m):
    """Taylor values d^(m+1)W(0), d^(m+2)W(0) for the deepest chain member.

    W = W_(m+1) solves W'' + W' + lam W = -profile(m)' with data
    (0, (-1)^(m+1) u1); differentiating the equation at t = 0 walks the
    Taylor coefficients up without ever building W, so the values stay at
    data scale regardless of how ill-conditioned W's representation is.
    """
    forcing = profiles.profile(m, lam, v0, u1).derivative().scaled(-1.0)
    d = [0.0 + 0.0j, complex((-1.0) ** (m + 1) * u1)]
    for j in range(m + 1):
        d.append(-d[j + 1] - lam * d[j] + forcing.derivative(j)(0.0))
    return d[m + 1], d[m + 2]


def _check_full_decomposition(ctx: ScenarioContext) -> list[dict]:
    anchor = "telescoped expansion identity"
    s = ctx.scenario
    m = min(s.m_max, 5)
    worst = 0.0
    for sol in ctx.solutions():
        lam = sol.lam
        a, b = sol.initial
        v0 = a + b
        # r := u - sum of d^l profile(l); the identity says r equals the
        # (m+1)-th derivative of the deepest chain member.  Certify that by
        # uniqueness: r solves the (m+1)-times differentiated chain ODE and
        # matches its two Taylor values at t = 0.  Everything here stays at
        # data scale, so the check holds on every mode.
        r = sol.u
        for ell in range(m + 1):
            r = r - profiles.profile(ell, lam, v0, b).derivative(ell)
        ode = r.derivative(2) + r.derivative() + r.scaled(lam) \
            + profiles.profile(m, lam, v0, b).derivative(m + 2)
        scale = max(sol.u.max_coef(), r.max_coef(),
                    profiles.profile(m, lam, v0, b).derivative(m + 2).max_coef(),
                    1e-300)
        worst = max(worst, ode.max_coef() / scale)
        dm1, dm2 = _remainder_derivatives_at_zero(lam, v0, b, m)
        ic_scale = max(abs(dm1), abs(dm2), abs(v0), abs(b), scale)
        worst = max(worst, abs(r(0.0) - dm1) / ic_scale,
                    abs(r.derivative()(0.0) - dm2) / ic_scale)
    return [
        _record("full-decomposition", s.name, {"m": m},
                _pass(worst <= COEF_TOL), worst, COEF_TOL, anchor)
    ]


# -- decay checks ----------------------------------------------------------------

def _error_curve(ctx: ScenarioContext, m: int, ts: np.ndarray) -> np.ndarray:
    errors = ctx.expansion_errors(m)
    total = np.zeros(ts.shape)
    for w, poly in zip(ctx.measure.weights, errors):
        vals = poly.eval_grid(ts)
        total += w * (vals.real**2 + vals.imag**2)
    return np.sqrt(total)


def _check_expansion_rate(ctx: ScenarioContext) -> list[dict]:
    anchor = "expansion error decay rate"
    s = ctx.scenario
    ts = s.window.fit_grid()
    records = []
    for m in range(min(s.m_max, 3) + 1):
        threshold = -(m + 0.5) + SLOPE_MARGIN
        errs = _error_curve(ctx, m, ts)
        params = {"m": m, "threshold": threshold,
                  "window": [s.window.t_min, s.window.t_max]}
        if np.any(errs < VALUE_FLOOR):
            records.append(
                _record("expansion-rate", s.name, params, "pass",
                        "super-polynomial", None, anchor)
            )
            continue
        fit = analysis.fit_decay(list(zip(ts, errs)))
        if fit.slope < SUPER_POLY_SLOPE:
            records.append(
                _record("expansion-rate", s.name, params, "pass",
                        "super-polynomial", None, anchor)
            )
            continue
        records.append(
            _record("expansion-rate", s.name, params,
                    _pass(fit.slope <= threshold), fit.slope, threshold, anchor)
        )
    return records


def _check_remainder_rate(ctx: ScenarioContext) -> list[dict]:
    anchor = "weighted remainder bound"
    s = ctx.scenario
    ts = s.window.sup_grid()
    records = []
    for m in range(min(s.m_max, 3) + 1):
        errs = _error_curve(ctx, m, ts)
        weighted = (1.0 + ts) ** (m + 0.5) * errs
        records.append(
            _sup_record("remainder-rate", ctx, {"m": m}, weighted, anchor)
        )
    return records


def _check_profile_contraction(ctx: ScenarioContext) -> list[dict]:
    anchor = "profile contraction scaling"
    s = ctx.scenario
    ts = s.window.sup_grid()
    records = []
    for ell in range(5):
        norms = profiles.profile_norm_curve(s.measure, s.u0, s.u1, ell, ts)
        weighted = (1.0 + ts) ** ell * norms
        records.append(
            _sup_record("profile-contraction", ctx, {"ell": ell}, weighted, anchor)
        )
    return records


def _check_profile_derivative_bound(ctx: ScenarioContext) -> list[dict]:
    anchor = "profile derivative decay"
    s = ctx.scenario
    ts = s.window.sup_grid()
    records = []
    for m in range(1, 4):
        for ell in range(4):
            state = [
                profiles.profile(m, float(lam), float(a + b), float(b)).derivative(ell)
                for lam, a, b in _data_triples(ctx)
            ]
            norms = analysis.state_norm_curve(s.measure, state, ts)
            weighted = (1.0 + ts) ** (2 * ell) * norms**2
            records.append(
                _sup_record("profile-derivative-bound", ctx,
                            {"m": m, "ell": ell}, weighted, anchor)
            )
    return records


# -- oracle checks ----------------------------------------------------------------

def _check_expansion_coefficients(ctx: ScenarioContext) -> list[dict]:
    anchor = "expansion coefficient arrays"
    report = series.verify_expansion_coefficients(6)
    return [
        _record("expansion-coefficients", ctx.scenario.name,
                {"m_max": 6, "entries": len(report.entries)},
                _pass(report.all_match), len(report.mismatches), 0, anchor)
    ]


def _check_takeda_values(ctx: ScenarioContext) -> list[dict]:
    anchor = "legacy coefficient tables"
    table = series.takeda_coefficients(2, 4)
    from fractions import Fraction

    ok = (
        table.alpha[(0, 0)] == 1
        and all(table.alpha[(0, k)] == 0 for k in range(1, 5))
        and table.beta[0] == 1
        and table.beta[1] == 2
        and all(table.beta[k] == Fraction(math.comb(2 * k, k)) for k in range(5))
    )
    return [
        _record("takeda-values", ctx.scenario.name, {"j_max": 2, "k_max": 4},
                _pass(ok), None, 0, anchor)
    ]


def _check_catalan_series(ctx: ScenarioContext) -> list[dict]:
    anchor = "slow-root Catalan series"
    order = 12
    offset = series.slow_root_offset_series(order)
    catalan = [1]
    for n in range(order):
        catalan.append(sum(catalan[i] * catalan[n - i] for i in range(n + 1)))
    ok = offset.coefficient(0) == 0 and offset.coefficient(1) == 0
    for k in range(2, order + 1):
        ok = ok and offset.coefficient(k) == -catalan[k - 1]
    return [
        _record("catalan-series", ctx.scenario.name, {"order": order},
                _pass(ok), None, 0, anchor)
    ]


# -- registry and runner ------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    suite: str
    runner: Callable[[ScenarioContext], list[dict]]


CHECK_REGISTRY: tuple[CheckSpec, ...] = (
    CheckSpec("energy-decay-law", "identities", _check_energy_decay),
    CheckSpec("energy-balance", "identities", _check_energy_balance),
    CheckSpec("semigroup-balance", "identities", _check_semigroup_balance),
    CheckSpec("semigroup-weighted-integral", "identities", _check_semigroup_integral),
    CheckSpec("state-bound", "identities", _check_state_bound),
    CheckSpec("first-remainder-bound", "identities", _check_first_remainder),
    CheckSpec("profile-recursion", "recursions", _check_profile_recursion),
    CheckSpec("profile-derivative", "recursions", _check_profile_derivative),
    CheckSpec("expansion-consistency", "recursions", _check_expansion_consistency),
    CheckSpec("first-decomposition", "recursions", _check_first_decomposition),
    CheckSpec("chain-decomposition", "recursions", _check_chain_decomposition),
    CheckSpec("full-decomposition", "recursions", _check_full_decomposition),
    CheckSpec("expansion-rate", "decay", _check_expansion_rate),
    CheckSpec("remainder-rate", "decay", _check_remainder_rate),
    CheckSpec("profile-contraction", "decay", _check_profile_contraction),
    CheckSpec("profile-derivative-bound", "decay", _check_profile_derivative_bound),
    CheckSpec("expansion-coefficients", "oracle", _check_expansion_coefficients),
    CheckSpec("takeda-values", "oracle", _check_takeda_values),
    CheckSpec("catalan-series", "oracle", _check_catalan_series),
)

SUITES = ("identities", "recursions", "decay", "oracle")


def run_verification_suite(
    scenario: Scenario,
    suite: str = "all",
    m_max: int | None = None,
    threads: int | None = None,
) -> dict:
    """Run the selected suite on a scenario and return the JSON-able report.

    Checks execute in a thread pool sized by the threads argument (default:
    the ADWLAB_THREADS environment variable, else serial); records are
    merged in registry order so reports are deterministic regardless of
    scheduling.
    """
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected all or one of {SUITES}")
    if m_max is not None:
        from dataclasses import replace

        if not (0 <= m_max <= 8):
            raise ValueError("m_max override must be in [0, 8]")
        scenario = replace(scenario, m_max=m_max)
    selected = [
        spec for spec in CHECK_REGISTRY
        if suite in ("all", spec.suite)
        and (scenario.checks is None or spec.check_id in scenario.checks)
    ]
    ctx = ScenarioContext(scenario)
    workers = threads if threads is not None else _env_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda spec: spec.runner(ctx), selected))
    else:
        blocks = [spec.runner(ctx) for spec in selected]
    checks = [record for block in blocks for record in block]
    passed = sum(1 for r in checks if r["status"] == "pass")
    return {
        "scenario": scenario.name,
        "suite": suite,
        "m_max": scenario.m_max,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "checks": checks,
        "summary": {
            "total": len(checks),
            "passed": passed,
            "failed": len(checks) - passed,
        },
    }


def report_exit_code(report: dict) -> int:
    """0 when every check passed, 1 otherwise."""
    return 0 if report["summary"]["failed"] == 0 else 1


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- error curve emission -------------------------------------------------------------

def emit_error_curve(scenario: Scenario, m: int, out_path: str) -> list[tuple[float, float, float]]:
    """Write the order-m expansion error curve as CSV t,error,bound_ref.

    bound_ref is the guaranteed-rate reference (1+t)^-(m+1/2) normalized to
    the error at the window start.  Returns the rows.
    """
    if not (0 <= m <= 8):
        raise ValueError("curve order must be in [0, 8]")
    ts = scenario.window.fit_grid()
    errs = profiles.expansion_error_curve(scenario.measure, scenario.u0,
                                          scenario.u1, m, ts)
    t0 = ts[0]
    e0 = errs[0]
    bounds = e0 * ((1.0 + ts) / (1.0 + t0)) ** (-(m + 0.5))
    rows = [(float(t), float(e), float(b)) for t, e, b in zip(ts, errs, bounds)]
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("t,error,bound_ref\n")
        for t, e, b in rows:
            fh.write(f"{t!r},{e!r},{b!r}\n")
    return rows
