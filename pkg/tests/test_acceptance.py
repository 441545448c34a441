"""Acceptance gate: ten end-to-end guarantees, one verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict
lines.  Every criterion states its tolerance inline; the whole file is
meant to stay under a minute on a laptop.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from adwlab.analysis import (
    energy,
    energy_curve,
    fit_decay,
    max_reg_identity,
    semigroup_tail_curve,
    weighted_tail_check,
)
from adwlab.modal import remainder_chain, solve_damped_mode
from adwlab.profiles import (
    asymptotic_profile,
    expansion_error,
    expansion_error_curve,
    modal_expansion_errors,
    profile,
    recursion_residual,
    shifted_profile,
)
from adwlab.scenarios import builtin_names, load_scenario
from adwlab.series import takeda_coefficients, verify_expansion_coefficients
from adwlab.spectral import sobolev_norm

LAMBDA_GRID = (0.0, 0.1, 0.25, 0.5, 1.0, 3.0)
V0, U1 = 1.5, -0.5
COEF_TOL = 1.0e-10
VALUE_TOL = 1.0e-10
ZERO_MODE_TOL = 1.0e-12


def _verdict(label: str, ok: bool, detail: str = "") -> bool:
    tag = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"[{tag}] {label}{suffix}")
    return ok


def _norm_curve_fn(measure, polys):
    weights = measure.weights

    def curve(t: float) -> float:
        total = 0.0
        for w, p in zip(weights, polys):
            v = p(t)
            total += w * (v.real**2 + v.imag**2)
        return math.sqrt(total)

    return curve


def test_exact_profile_coefficients():
    report = verify_expansion_coefficients(6)
    ok = report.all_match and not report.mismatches
    assert _verdict(
        "1/10 exact profile coefficient tables through grade 6",
        ok, f"{len(report.entries)} coefficient pairs, zero tolerance")


def test_profile_recursion_identity():
    worst = 0.0
    initial_ok = True
    for lam in LAMBDA_GRID:
        for m in range(7):
            res = recursion_residual(m, lam, V0, U1)
            scale = max(profile(m, lam, V0, U1).max_coef(),
                        profile(m + 1, lam, V0, U1).max_coef(), 1.0)
            worst = max(worst, res.max_coef() / scale)
            got = profile(m + 1, lam, V0, U1)(0.0)
            if got != (-1.0) ** (m + 1) * U1:
                initial_ok = False
    ok = worst <= COEF_TOL and initial_ok
    assert _verdict(
        "2/10 profile recursion identity, m <= 6 on the rate grid",
        ok, f"worst residual {worst:.2e} <= {COEF_TOL:.0e}, "
            f"initial values exact: {initial_ok}")


def test_profile_derivative_shift_law():
    worst = 0.0
    # the shifted family is defined for m >= 1, ell >= 1
    for lam in LAMBDA_GRID:
        for m in range(1, 6):
            for ell in range(1, 6):
                lhs = profile(m, lam, V0, U1).derivative(ell)
                rhs = shifted_profile(m, ell, lam, V0, U1).scaled(
                    (-lam) ** ell)
                scale = max(lhs.max_coef(), rhs.max_coef(), 1.0)
                worst = max(worst, (lhs - rhs).max_coef() / scale)
    ok = worst <= COEF_TOL
    assert _verdict(
        "3/10 derivative shift law, m, ell <= 5 on the rate grid",
        ok, f"worst mismatch {worst:.2e} <= {COEF_TOL:.0e}")


def test_remainder_decompositions():
    m_top = 4
    worst = 0.0
    for lam in LAMBDA_GRID:
        u0 = V0 - U1
        u = solve_damped_mode(lam, u0, U1).u
        chain = [link.u for link in remainder_chain(lam, V0, U1, m_top)]
        scale = max([u.max_coef()] + [w.max_coef() for w in chain])

        first = u - profile(0, lam, V0, U1) - chain[0].derivative()
        worst = max(worst, first.max_coef() / scale)
        for k in range(1, m_top + 1):
            step = (chain[k - 1] - profile(k, lam, V0, U1)
                    - chain[k].derivative())
            worst = max(worst, step.max_coef() / scale)
        total = chain[m_top].derivative(m_top + 1)
        for ell in range(m_top + 1):
            total = total + profile(ell, lam, V0, U1).derivative(ell)
        worst = max(worst, (u - total).max_coef() / scale)
    ok = worst <= COEF_TOL
    assert _verdict(
        "4/10 remainder decompositions and telescoped expansion, m <= 4",
        ok, f"worst residual {worst:.2e} <= {COEF_TOL:.0e}")


def test_weighted_semigroup_balance():
    worst = 0.0
    corrections_ok = True
    integrals_ok = True
    for name in builtin_names():
        sc = load_scenario(name)
        f = sc.v0
        norm_sq = sobolev_norm(sc.measure, f) ** 2
        scale = max(norm_sq, 1e-300)
        for n in range(5):
            for t in (0.0, 0.5, 1.0, 5.0, 20.0):
                res = max_reg_identity(sc.measure, f, n, t)
                worst = max(worst, abs(res.lhs - res.rhs) / scale)
                if n == 0 and res.correction_sum != 0.0:
                    corrections_ok = False
                if res.correction_sum < -VALUE_TOL * scale:
                    corrections_ok = False
            tail = weighted_tail_check(
                semigroup_tail_curve(sc.measure, f, n), n,
                mode="integral", window=(0.0, sc.window.sup_t_max))
            if not (tail.finite and math.isfinite(tail.value)):
                integrals_ok = False
    ok = worst <= VALUE_TOL and corrections_ok and integrals_ok
    assert _verdict(
        "5/10 weighted semigroup balance, n <= 4, all scenarios",
        ok, f"worst gap {worst:.2e} <= {VALUE_TOL:.0e}, "
            f"corrections nonnegative: {corrections_ok}, "
            f"weighted integrals converged: {integrals_ok}")


def test_wave_line_decay_rates():
    sc = load_scenario("wave-line")
    ts = sc.window.fit_grid()
    # later window: transient curvature has died out, quadrature
    # discreteness not yet visible, so slopes sit near the sharp rate
    ts_late = np.expm1(np.linspace(math.log1p(100.0), math.log1p(1.0e4), 40))
    slopes, late_gaps = [], []
    sups_ok = True
    for m in range(4):
        errs = expansion_error_curve(sc.measure, sc.u0, sc.u1, m, ts)
        fit = fit_decay(list(zip(ts, errs)))
        slopes.append(fit.slope)
        errs_late = expansion_error_curve(sc.measure, sc.u0, sc.u1, m, ts_late)
        late = fit_decay(list(zip(ts_late, errs_late)))
        late_gaps.append(abs(late.slope + m + 1.5))
        curve = _norm_curve_fn(
            sc.measure, modal_expansion_errors(sc.measure, sc.u0, sc.u1, m))
        tail = weighted_tail_check(curve, m + 0.5, mode="supremum",
                                   window=(0.0, sc.window.sup_t_max))
        if not (tail.finite and math.isfinite(tail.value)):
            sups_ok = False
    thresholds_ok = all(
        slope <= -(m + 0.5) + 0.1 for m, slope in enumerate(slopes))
    ok = thresholds_ok and sups_ok
    slope_text = ", ".join(f"{s:.3f}" for s in slopes)
    gap_text = ", ".join(f"{g:.3f}" for g in late_gaps)
    assert _verdict(
        "6/10 wave-line decay rates for orders 0..3",
        ok, f"slopes [{slope_text}] vs floors -(m+1/2)+0.1; "
            f"late-window gaps to -(m+3/2): [{gap_text}]; "
            f"weighted remainder sups finite: {sups_ok}")


def test_zero_mode_error_is_pure_exponential():
    sc = load_scenario("zero-mode")
    amp = sobolev_norm(sc.measure, sc.u1)
    worst = 0.0
    for m in range(5):
        for t in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0):
            err = expansion_error(sc.measure, sc.u0, sc.u1, m, t)
            expected = amp * math.exp(-t)
            worst = max(worst, abs(err - expected) / expected)
    ok = worst <= ZERO_MODE_TOL
    assert _verdict(
        "7/10 zero-mode error equals |u1| e^(-t) for every order",
        ok, f"worst relative gap {worst:.2e} <= {ZERO_MODE_TOL:.0e}")


def test_profile_contraction_bounds():
    all_ok = True
    for name in builtin_names():
        sc = load_scenario(name)
        for ell in range(5):
            polys = [
                asymptotic_profile(ell, float(lam), float(a + b), float(b))
                for lam, a, b in zip(sc.measure.lambdas, sc.u0.coeffs,
                                     sc.u1.coeffs)
            ]
            tail = weighted_tail_check(
                _norm_curve_fn(sc.measure, polys), ell,
                mode="supremum", window=(0.0, sc.window.sup_t_max))
            if not (tail.finite and math.isfinite(tail.value)):
                all_ok = False
    assert _verdict(
        "8/10 weighted profile sups finite for ell <= 4, all scenarios",
        all_ok)


def test_takeda_table_values_and_stability():
    table = takeda_coefficients(4, 4)
    values_ok = (
        table.alpha[(0, 0)] == Fraction(1)
        and all(table.alpha[(0, k)] == 0 for k in range(1, 5))
        and table.beta[0] == Fraction(1)
        and table.beta[1] == Fraction(2)
    )
    first = table.render_csv().encode()
    again = takeda_coefficients(4, 4).render_csv().encode()
    stable = first == again
    ok = values_ok and stable
    assert _verdict(
        "9/10 coefficient table values exact and emission byte-stable",
        ok, f"values exact: {values_ok}, bytes stable: {stable}")


def test_energy_laws():
    decay_ok = True
    balance_worst = 0.0
    sups_ok = True
    ts_short = np.expm1(np.linspace(0.0, math.log1p(50.0), 40))
    for name in builtin_names():
        sc = load_scenario(name)
        state = [
            solve_damped_mode(float(lam), float(a), float(b)).u
            for lam, a, b in zip(sc.measure.lambdas, sc.u0.coeffs,
                                 sc.u1.coeffs)
        ]
        e, _, _ = energy_curve(sc.measure, state, ts_short)
        scale = max(e[0], 1e-300)
        if len(e) > 1 and float(np.max(np.diff(e))) > VALUE_TOL * scale:
            decay_ok = False

        e0 = energy(sc.measure, state, 0.0).energy
        for t in (0.5, 1.0, 5.0, 20.0):
            e_t = energy(sc.measure, state, t).energy
            dissipated = math.fsum(
                2.0 * w * (u.derivative() * u.derivative().conjugate())
                .definite_integral(t).real
                for w, u in zip(sc.measure.weights, state)
            )
            balance_worst = max(
                balance_worst, abs(e_t + dissipated - e0) / scale)

        ts = sc.window.sup_grid()
        e_grid, _, l2_grid = energy_curve(sc.measure, state, ts)
        weighted = (1.0 + ts) * e_grid + l2_grid
        tail = weighted[ts >= sc.window.sup_t_max / 10.0]
        if tail.size < 2:
            tail = weighted[-2:]
        if not (np.all(np.isfinite(weighted))
                and tail[-1] <= tail[0] * 1.001 + 1e-300):
            sups_ok = False
    ok = decay_ok and balance_worst <= VALUE_TOL and sups_ok
    assert _verdict(
        "10/10 energy laws on all scenarios",
        ok, f"nonincreasing: {decay_ok}, balance gap "
            f"{balance_worst:.2e} <= {VALUE_TOL:.0e}, "
            f"weighted state sups finite: {sups_ok}")
