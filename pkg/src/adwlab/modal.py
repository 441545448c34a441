"""Exact solvers for the scalar damped mode equation.

Each spectral mode satisfies u'' + u' + lambda u = f with characteristic
polynomial s^2 + s + lambda.  Solutions are exponential polynomials, so
the solvers return closed forms whose residual can be checked at the
coefficient level.  The remainder chain attaches, to the same data, the
auxiliary solutions whose time derivatives carry the expansion remainder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .exppoly import RATE_TOL, ExpPoly
from . import profiles

# Width of the mode interval treated as the double-root case.
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class CharRoots:
    """Roots of s^2 + s + lambda, ordered so mu_plus decays slowest."""

    mu_plus: complex
    mu_minus: complex
    degenerate: bool


def char_roots(lam: float) -> CharRoots:
    """Characteristic roots for mode value lam >= 0.

    Real and distinct below 1/4, a double root -1/2 at 1/4 (within
    DEGENERATE_TOL), and a conjugate pair -1/2 +- i sqrt(lam - 1/4) above.
    """
    lam = float(lam)
    if lam < 0:
        raise ValueError(f"mode value must be >= 0, got {lam}")
    if abs(lam - 0.25) <= DEGENERATE_TOL:
        return CharRoots(complex(-0.5), complex(-0.5), True)
    if lam < 0.25:
        root = math.sqrt(1.0 - 4.0 * lam)
        mu_minus = -(1.0 + root) / 2.0
        # Vieta: mu_plus * mu_minus = lam; this form avoids cancellation
        # for small lam.
        mu_plus = lam / mu_minus if lam != 0 else 0.0
        return CharRoots(complex(mu_plus), complex(mu_minus), False)
    nu = math.sqrt(lam - 0.25)
    return CharRoots(complex(-0.5, nu), complex(-0.5, -nu), False)


@dataclass(frozen=True)
class ModalSolution:
    """Closed-form solution of one damped mode with its defining data."""

    u: ExpPoly
    lam: float
    initial: tuple[float, float]
    forcing: ExpPoly = field(default_factory=ExpPoly.zero)

    def residual(self) -> ExpPoly:
        """u'' + u' + lambda u - f, canonically zero for a valid solution."""
        return (
            self.u.derivative(2)
            + self.u.derivative()
            + self.u.scaled(self.lam)
            - self.forcing
        )


def _homogeneous(lam: float, a: complex, b: complex) -> ExpPoly:
    roots = char_roots(lam)
    if roots.degenerate:
        mu = roots.mu_plus
        return ExpPoly.from_terms([(a, 0, mu), (b - mu * a, 1, mu)])
    denom = roots.mu_plus - roots.mu_minus
    c_plus = (b - roots.mu_minus * a) / denom
    c_minus = a - c_plus
    return ExpPoly.from_terms(
        [(c_plus, 0, roots.mu_plus), (c_minus, 0, roots.mu_minus)]
    )


def solve_damped_mode(lam: float, a: float, b: float) -> ModalSolution:
    """Solve u'' + u' + lambda u = 0 with u(0) = a, u'(0) = b."""
    u = _homogeneous(float(lam), complex(a), complex(b))
    return ModalSolution(u=u, lam=float(lam), initial=(float(a), float(b)))


def _resonant_multiplicity(mu: complex, roots: CharRoots) -> int:
    if roots.degenerate:
        return 2 if abs(mu - roots.mu_plus) <= RATE_TOL else 0
    hits = 0
    if abs(mu - roots.mu_plus) <= RATE_TOL:
        hits += 1
    if abs(mu - roots.mu_minus) <= RATE_TOL:
        hits += 1
    return hits


def _particular_group(lam: float, roots: CharRoots, mu: complex, coeffs: list[complex]):
    """Particular solution q(t) e^(mu t) for forcing poly(t) e^(mu t).

    Substituting q e^(mu t) reduces the equation to
    q'' + (2 mu + 1) q' + P(mu) q = poly with P the characteristic
    polynomial; the three branches are the root multiplicities of mu.
    """
    deg = len(coeffs) - 1
    mult = _resonant_multiplicity(mu, roots)
    if mult == 0:
        # P(mu) as a product of root distances: accurate also near a root.
        p_mu = (mu - roots.mu_plus) * (mu - roots.mu_minus)
        q = [0j] * (deg + 1)
        for j in range(deg, -1, -1):
            val = coeffs[j]
            if j + 1 <= deg:
                val -= (2 * mu + 1) * (j + 1) * q[j + 1]
            if j + 2 <= deg:
                val -= (j + 2) * (j + 1) * q[j + 2]
            q[j] = val / p_mu
        return [(q[j], j, mu) for j in range(deg + 1)]
    if mult == 1:
        # g = q' solves g' + (2 mu + 1) g = poly; one extra power of t.
        slope = 2 * mu + 1
        g = [0j] * (deg + 1)
        for j in range(deg, -1, -1):
            val = coeffs[j]
            if j + 1 <= deg:
                val -= (j + 1) * g[j + 1]
            g[j] = val / slope
        return [(g[j] / (j + 1), j + 1, mu) for j in range(deg + 1)]
    # Double root: q'' = poly, two extra powers of t.
    return [(coeffs[j] / ((j + 1) * (j + 2)), j + 2, mu) for j in range(deg + 1)]


def solve_forced_mode(lam: float, forcing: ExpPoly, a: float, b: float) -> ModalSolution:
    """Solve u'' + u' + lambda u = forcing with u(0) = a, u'(0) = b.

    The forcing must be an exponential polynomial; resonant rates (within
    RATE_TOL of a characteristic root) are handled by raising the
    polynomial degree instead of dividing by a vanishing value.
    """
    lam = float(lam)
    roots = char_roots(lam)
    groups: dict[int, tuple[complex, list[complex]]] = {}
    order = []
    for c, p, mu in forcing.terms:
        key = None
        for idx, (gmu, _) in groups.items():
            if abs(mu - gmu) <= RATE_TOL:
                key = idx
                break
        if key is None:
            key = len(groups)
            groups[key] = (mu, [])
            order.append(key)
        gmu, coeffs = groups[key]
        while len(coeffs) <= p:
            coeffs.append(0j)
        coeffs[p] += c
    particular_terms = []
    for key in order:
        gmu, coeffs = groups[key]
        particular_terms.extend(_particular_group(lam, roots, gmu, coeffs))
    particular = ExpPoly.from_terms(particular_terms)
    y0 = particular(0.0)
    y1 = particular.derivative()(0.0)
    u = particular + _homogeneous(lam, complex(a) - y0, complex(b) - y1)
    return ModalSolution(u=u, lam=lam, initial=(float(a), float(b)), forcing=forcing)


def remainder_chain(lam: float, v0: float, u1: float, m: int) -> list[ModalSolution]:
    """Auxiliary solutions whose derivatives carry the expansion remainder.

    Returns [W_1, ..., W_(m+1)] where W_(k+1) solves the damped mode
    equation with forcing -d/dt profile(k) and data (0, (-1)^(k+1) u1).
    The chain satisfies u = profile(0) + W_1', W_k = profile(k) + W_(k+1)'
    and, telescoped, u = sum_l d^l/dt^l profile(l) + d^(m+1)/dt^(m+1) W_(m+1).

    Conditioning: from W_2 on, coefficients grow like 1/|mu_plus + lam| per
    step because the forcing rate -lam sits next to the slow root.  When
    that gap is under ~1e-5 (0 < lam under ~3e-3) float64 coefficients can
    no longer resolve initial-data-sized components, so coefficient-level
    bookkeeping degrades; evaluate the remainder through the expansion
    error u - sum of profiles instead.  lam = 0 is exact (true resonance).
    """
    if m < 0:
        raise ValueError("chain length must be >= 0")
    chain = []
    for k in range(m + 1):
        forcing = -profiles.profile(k, lam, v0, u1).derivative()
        b0 = u1 if (k + 1) % 2 == 0 else -u1
        chain.append(solve_forced_mode(lam, forcing, 0.0, b0))
    return chain
