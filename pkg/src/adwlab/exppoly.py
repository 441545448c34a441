"""Closed-form algebra for exponential polynomials.

An exponential polynomial is a finite sum of terms ``c * t**p * exp(mu*t)``
with complex coefficient ``c``, integer power ``p >= 0`` and complex rate
``mu``.  The family is closed under addition, multiplication,
differentiation and definite integration, which makes it the exact
solution algebra for damped modal equations: every quantity downstream
(modal solutions, profiles, remainder chains, energy integrals) lives here,
so identities can be checked at the coefficient level instead of on sampled
values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Rates closer than this denote the same exponential.  Resonance detection
# in the modal solver uses the same tolerance, so a forcing whose rate is
# indistinguishable from a characteristic root is solved on the resonant
# branch rather than dividing by a vanishing characteristic value.
RATE_TOL = 1e-12

# Below this, exp(x) underflows even after the power factor is absorbed.
_LOG_FLOOR = -745.0

Term = tuple[complex, int, complex]


def _canonical(terms: Iterable[Term]) -> tuple[Term, ...]:
    """Merge terms with equal (power, rate) and drop exact zeros.

    Rates are compared with tolerance RATE_TOL; the first rate of a merged
    group is kept.  Output is ordered by (Re rate, Im rate, power).
    """
    cleaned = []
    for c, p, mu in terms:
        c = complex(c)
        mu = complex(mu)
        p = int(p)
        if p < 0:
            raise ValueError(f"negative power {p} in exponential polynomial")
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("non-finite coefficient")
        if not (math.isfinite(mu.real) and math.isfinite(mu.imag)):
            raise ValueError("non-finite rate")
        if c != 0:
            cleaned.append((c, p, mu))
    cleaned.sort(key=lambda t: (t[1], t[2].real, t[2].imag))
    merged: list[list] = []
    for c, p, mu in cleaned:
        if merged and merged[-1][1] == p and abs(mu - merged[-1][2]) <= RATE_TOL:
            merged[-1][0] += c
        else:
            merged.append([c, p, mu])
    out = [(c, p, mu) for c, p, mu in merged if c != 0]
    out.sort(key=lambda t: (t[2].real, t[2].imag, t[1]))
    return tuple(out)


def _term_at(c: complex, p: int, mu: complex, t: float) -> complex:
    x = mu.real * t
    if x >= -700.0:
        return c * t**p * cmath.exp(mu * t)
    # Deep decay: combine magnitudes in log space so t**p cannot push an
    # otherwise representable product through exp underflow.
    if c == 0 or t <= 0.0:
        return 0j
    logmag = math.log(abs(c)) + p * math.log(t) + x
    if logmag < _LOG_FLOOR:
        return 0j
    phase = cmath.phase(c) + mu.imag * t
    return math.exp(logmag) * complex(math.cos(phase), math.sin(phase))


@dataclass(frozen=True)
class ExpPoly:
    """Finite sum of terms c * t^p * exp(mu t) in canonical order."""

    terms: tuple[Term, ...] = ()

    @staticmethod
    def from_terms(terms: Iterable[Term]) -> "ExpPoly":
        return ExpPoly(_canonical(terms))

    @staticmethod
    def zero() -> "ExpPoly":
        return ExpPoly(())

    @staticmethod
    def constant(c: complex) -> "ExpPoly":
        return ExpPoly.from_terms([(c, 0, 0.0)])

    @staticmethod
    def monomial(c: complex, power: int, rate: complex) -> "ExpPoly":
        return ExpPoly.from_terms([(c, power, rate)])

    @staticmethod
    def exponential(c: complex, rate: complex) -> "ExpPoly":
        return ExpPoly.from_terms([(c, 0, rate)])

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return ExpPoly.from_terms(self.terms + other.terms)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(tuple((-c, p, mu) for c, p, mu in self.terms))

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ExpPoly):
            prods = [
                (c1 * c2, p1 + p2, m1 + m2)
                for c1, p1, m1 in self.terms
                for c2, p2, m2 in other.terms
            ]
            return ExpPoly.from_terms(prods)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, factor: complex) -> "ExpPoly":
        return ExpPoly.from_terms([(c * factor, p, mu) for c, p, mu in self.terms])

    # -- calculus ---------------------------------------------------------

    def derivative(self, order: int = 1) -> "ExpPoly":
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        poly = self
        for _ in range(order):
            new: list[Term] = []
            for c, p, mu in poly.terms:
                if p > 0:
                    new.append((c * p, p - 1, mu))
                new.append((c * mu, p, mu))
            poly = ExpPoly.from_terms(new)
        return poly

    def antiderivative(self) -> "ExpPoly":
        """One antiderivative (no normalization of the constant term).

        Uses int t^p e^(mu t) = t^p e^(mu t)/mu - (p/mu) int t^(p-1) e^(mu t)
        for mu != 0 and the power rule otherwise.  Rates within RATE_TOL of
        zero take the polynomial branch.

        Output coefficients grow like p!/|mu|^(p+1), so definite integrals
        of high powers at small nonzero rates lose accuracy to cancellation
        in proportion to that size.
        """
        out: list[Term] = []
        for c, p, mu in self.terms:
            if abs(mu) <= RATE_TOL:
                out.append((c / (p + 1), p + 1, 0.0))
                continue
            coeff = c
            for k in range(p, -1, -1):
                out.append((coeff / mu, k, mu))
                coeff = -coeff * k / mu
        return ExpPoly.from_terms(out)

    def definite_integral(self, t: float) -> complex:
        """Exact integral over [0, t]."""
        anti = self.antiderivative()
        return anti(t) - anti(0.0)

    # -- evaluation --------------------------------------------------------

    def __call__(self, t: float) -> complex:
        t = float(t)
        total = 0j
        for c, p, mu in self.terms:
            total += _term_at(c, p, mu, t)
        return total

    def eval_grid(self, ts: Sequence[float]) -> np.ndarray:
        """Vectorized evaluation on a grid of times."""
        arr = np.asarray(ts, dtype=float)
        out = np.zeros(arr.shape, dtype=complex)
        with np.errstate(under="ignore"):
            for c, p, mu in self.terms:
                out += c * arr**p * np.exp(mu * arr.astype(complex))
        return out

    # -- structure ---------------------------------------------------------

    def conjugate(self) -> "ExpPoly":
        return ExpPoly.from_terms(
            [(c.conjugate(), p, mu.conjugate()) for c, p, mu in self.terms]
        )

    def max_coef(self) -> float:
        return max((abs(c) for c, _, _ in self.terms), default=0.0)

    def is_zero(self, tol: float = 1e-10, scale: float | None = None) -> bool:
        """True when every coefficient is below tol times the scale.

        The default scale is the polynomial's own largest coefficient, so a
        freshly canceled sum with residue near machine epsilon qualifies.
        """
        if not self.terms:
            return True
        if scale is None:
            scale = self.max_coef()
        bound = tol * max(scale, 1e-300)
        return all(abs(c) <= bound for c, _, _ in self.terms)

    def isclose(self, other: "ExpPoly", tol: float = 1e-10) -> bool:
        scale = max(self.max_coef(), other.max_coef(), 1e-300)
        return (self - other).is_zero(tol, scale=scale)

    def is_real(self, tol: float = 1e-12) -> bool:
        """True when the term set is closed under complex conjugation."""
        diff = self - self.conjugate()
        scale = max(self.max_coef(), 1e-300)
        return diff.is_zero(tol, scale=scale)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, p, mu in self.terms:
            coef = f"{c.real:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)"
            piece = coef
            if p == 1:
                piece += " * t"
            elif p > 1:
                piece += f" * t^{p}"
            if mu != 0:
                rate = f"{mu.real:g}" if mu.imag == 0 else f"({mu.real:g}{mu.imag:+g}j)"
                piece += f" * exp({rate} t)"
            parts.append(piece)
        return " + ".join(parts)


# Functional aliases kept for callers that prefer free functions.

def ep_combine(a: ExpPoly, b: ExpPoly, op: str = "add", scale: complex = 1.0) -> ExpPoly:
    """Combine two exponential polynomials: op is 'add' or 'mul'.

    The scale factor multiplies b before combining, so subtraction is
    ep_combine(a, b, 'add', -1).
    """
    if op == "add":
        return a + b.scaled(scale)
    if op == "mul":
        return a * b.scaled(scale)
    raise ValueError(f"unknown combine op {op!r}")


def ep_derivative(a: ExpPoly, order: int = 1) -> ExpPoly:
    return a.derivative(order)


def ep_definite_integral(a: ExpPoly, t: float) -> complex:
    return a.definite_integral(t)


def ep_eval(a: ExpPoly, t: float) -> complex:
    return a(t)
