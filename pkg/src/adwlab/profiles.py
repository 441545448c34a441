"""Heat-semigroup profile families for the damped modal equation.

Per mode lambda the solution of u'' + u' + lambda u = 0 is tracked, to any
polynomial order, by explicit profiles built from the heat kernel
exp(-lambda t).  With v0 = u0 + u1 the order-m correction profile is

    profile(0) = v0 e^(-lt)
    profile(m) = (-1)^m [ sum_{j=1..m} C(m-1, j-1) (-lt)^j / j! * v0
                 + sum_{k=0..m-1} C(m-1, k) (-lt)^k / k! * u1 ] e^(-lt)

and consecutive profiles satisfy the succession law

    d/dt profile(m+1) + lambda profile(m+1) = -d/dt profile(m),
    profile(m+1)(0) = (-1)^(m+1) u1.

Time derivatives stay in the family: d^l/dt^l profile(m) equals
(-lambda)^l shifted_profile(m, l), and the order-l term of the asymptotic
expansion of u is asymptotic_profile(l) = (-lambda)^l shifted_profile(l, l).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .exppoly import ExpPoly
from .spectral import ModalVector, SpectralMeasure, _check_conformal


def profile(m: int, lam: float, v0: float, u1: float) -> ExpPoly:
    """Order-m correction profile as an exponential polynomial."""
    if m < 0:
        raise ValueError("profile order must be >= 0")
    if lam < 0:
        raise ValueError("mode value must be >= 0")
    if m == 0:
        return ExpPoly.from_terms([(v0, 0, -lam)])
    sign = (-1.0) ** m
    terms = []
    for j in range(1, m + 1):
        coef = sign * math.comb(m - 1, j - 1) * (-lam) ** j / math.factorial(j) * v0
        terms.append((coef, j, -lam))
    for k in range(m):
        coef = sign * math.comb(m - 1, k) * (-lam) ** k / math.factorial(k) * u1
        terms.append((coef, k, -lam))
    return ExpPoly.from_terms(terms)


def shifted_profile(m: int, ell: int, lam: float, v0: float, u1: float) -> ExpPoly:
    """Profile variant whose (-lambda)^ell multiple is d^ell/dt^ell profile(m).

    Defined for m >= 1 and ell >= 1:

        (-1)^m [ sum_{j=0..m} C(l+m-1, l+j-1) (-lt)^j / j! * v0
               + sum_{k=0..m-1} C(l+m-1, l+k) (-lt)^k / k! * u1 ] e^(-lt)
    """
    if m < 1 or ell < 1:
        raise ValueError("shifted profile needs m >= 1 and ell >= 1")
    if lam < 0:
        raise ValueError("mode value must be >= 0")
    sign = (-1.0) ** m
    terms = []
    for j in range(m + 1):
        coef = (
            sign * math.comb(ell + m - 1, ell + j - 1)
            * (-lam) ** j / math.factorial(j) * v0
        )
        terms.append((coef, j, -lam))
    for k in range(m):
        coef = (
            sign * math.comb(ell + m - 1, ell + k)
            * (-lam) ** k / math.factorial(k) * u1
        )
        terms.append((coef, k, -lam))
    return ExpPoly.from_terms(terms)


def asymptotic_profile(ell: int, lam: float, v0: float, u1: float) -> ExpPoly:
    """Order-ell term of the long-time expansion of the modal solution.

    Order 0 is the heat evolution of v0; higher orders carry the binomial
    arrays C(2l-1, l+j-1) on the v0 part and C(2l-1, l+k) on the u1 part.
    """
    if ell < 0:
        raise ValueError("expansion order must be >= 0")
    if lam < 0:
        raise ValueError("mode value must be >= 0")
    if ell == 0:
        return ExpPoly.from_terms([(v0, 0, -lam)])
    pref = lam**ell
    terms = []
    for j in range(ell + 1):
        coef = (
            pref * math.comb(2 * ell - 1, ell + j - 1)
            * (-lam) ** j / math.factorial(j) * v0
        )
        terms.append((coef, j, -lam))
    for k in range(ell):
        coef = (
            pref * math.comb(2 * ell - 1, ell + k)
            * (-lam) ** k / math.factorial(k) * u1
        )
        terms.append((coef, k, -lam))
    return ExpPoly.from_terms(terms)


def recursion_residual(m: int, lam: float, v0: float, u1: float) -> ExpPoly:
    """Residual of the succession law linking profiles m and m+1.

    d/dt profile(m+1) + lambda profile(m+1) + d/dt profile(m); canonically
    zero for every order and mode.
    """
    nxt = profile(m + 1, lam, v0, u1)
    cur = profile(m, lam, v0, u1)
    return nxt.derivative() + nxt.scaled(lam) + cur.derivative()


# -- expansion error ----------------------------------------------------------

def modal_expansion_errors(
    measure: SpectralMeasure, u0: ModalVector, u1: ModalVector, m: int
) -> list[ExpPoly]:
    """Per-mode difference between the solution and its order-m expansion.

    Modes with 0 < lam below ~1e-6 put the slow characteristic root within
    the rate-merge tolerance of -lam, so the difference loses the exponent
    gap and late-time evaluations saturate near lam^2 * t * data instead of
    the true residual. Keep the smallest positive mode above that range
    (the builtin measures do).
    """
    from . import modal  # deferred: modal builds its forcing from this module

    _check_conformal(measure, u0)
    _check_conformal(measure, u1)
    if m < 0:
        raise ValueError("expansion order must be >= 0")
    errors = []
    for lam, a, b in zip(measure.lambdas, u0.coeffs, u1.coeffs):
        sol = modal.solve_damped_mode(float(lam), float(a), float(b))
        v0 = float(a + b)
        total = sol.u
        for ell in range(m + 1):
            total = total - asymptotic_profile(ell, float(lam), v0, float(b))
        errors.append(total)
    return errors


def expansion_error_curve(
    measure: SpectralMeasure,
    u0: ModalVector,
    u1: ModalVector,
    m: int,
    ts: Sequence[float],
) -> np.ndarray:
    """Norm of the order-m expansion error on a grid of times."""
    errors = modal_expansion_errors(measure, u0, u1, m)
    arr = np.asarray(ts, dtype=float)
    total = np.zeros(arr.shape)
    for w, poly in zip(measure.weights, errors):
        vals = poly.eval_grid(arr)
        total += w * (vals.real**2 + vals.imag**2)
    return np.sqrt(total)


def expansion_error(
    measure: SpectralMeasure, u0: ModalVector, u1: ModalVector, m: int, t: float
) -> float:
    """Norm of the order-m expansion error at a single time."""
    return float(expansion_error_curve(measure, u0, u1, m, [t])[0])


def profile_norm_curve(
    measure: SpectralMeasure,
    u0: ModalVector,
    u1: ModalVector,
    ell: int,
    ts: Sequence[float],
) -> np.ndarray:
    """Norm of the order-ell asymptotic profile on a grid of times."""
    _check_conformal(measure, u0)
    _check_conformal(measure, u1)
    arr = np.asarray(ts, dtype=float)
    total = np.zeros(arr.shape)
    for lam, w, a, b in zip(measure.lambdas, measure.weights, u0.coeffs, u1.coeffs):
        poly = asymptotic_profile(ell, float(lam), float(a + b), float(b))
        vals = poly.eval_grid(arr)
        total += w * (vals.real**2 + vals.imag**2)
    return np.sqrt(total)


def export_profile_curves(
    measure: SpectralMeasure,
    u0: ModalVector,
    u1: ModalVector,
    ells: Sequence[int],
    ts: Sequence[float],
    path: str,
) -> None:
    """Write per-mode profile curves as CSV rows mode,lambda,ell,t,value."""
    _check_conformal(measure, u0)
    _check_conformal(measure, u1)
    arr = np.asarray(ts, dtype=float)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("mode,lambda,ell,t,value\n")
        for k, (lam, a, b) in enumerate(zip(measure.lambdas, u0.coeffs, u1.coeffs)):
            for ell in ells:
                poly = asymptotic_profile(int(ell), float(lam), float(a + b), float(b))
                vals = poly.eval_grid(arr).real
                for t, v in zip(arr, vals):
                    fh.write(f"{k},{float(lam)!r},{int(ell)},{float(t)!r},{float(v)!r}\n")
