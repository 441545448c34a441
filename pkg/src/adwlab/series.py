"""Exact-rational series oracles for the expansion coefficients.

Two generating-function families are computed with Fraction arithmetic and
used to certify, with no floating point involved, the binomial coefficient
arrays of the long-time expansion:

* Takeda-style coefficient tables alpha_(j,k), beta_k extracted from
  phi_j(r) = (1/2 + sqrt(1/4 - r))^(-2j) and psi(r) = (1/2)(1/4 - r)^(-1/2).
* The slow characteristic root mu(l) of s^2 + s + l, whose offset mu + l
  is a negated Catalan series, and the slow-branch amplitude of the modal
  solution.  Their bigraded product in (l, t) reproduces, grade by grade,
  exactly the binomial arrays of the asymptotic profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class SingularSeriesError(ValueError):
    """Operation needs a nonzero (or positive square) constant term."""


class SeriesCapacityError(ValueError):
    """Requested coefficients exceed the stored truncation order."""


def _sqrt_fraction(x: Fraction) -> Fraction:
    if x < 0:
        raise SingularSeriesError("square root of a negative constant term")
    num = math.isqrt(x.numerator)
    den = math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise SingularSeriesError(f"constant term {x} is not a rational square")
    return Fraction(num, den)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series with exact rational coefficients, truncated at an order."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(values: Iterable, order: int | None = None) -> "TruncatedSeries":
        cs = [Fraction(v) for v in values]
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be >= 0")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        if not cs:
            raise ValueError("series needs at least the constant coefficient")
        return TruncatedSeries(tuple(cs))

    @staticmethod
    def constant(value, order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs([value], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("coefficient index must be >= 0")
        if k > self.order:
            raise SeriesCapacityError(
                f"coefficient {k} beyond truncation order {self.order}"
            )
        return self.coeffs[k]

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._common(other)
            return TruncatedSeries(
                tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1))
            )
        return TruncatedSeries(
            (self.coeffs[0] + Fraction(other),) + self.coeffs[1:]
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return self + (-other)
        return self + (-Fraction(other))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._common(other)
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if a == 0:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] += a * b
            return TruncatedSeries(tuple(out))
        f = Fraction(other)
        return TruncatedSeries(tuple(c * f for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("series power must be a nonnegative integer")
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> "TruncatedSeries":
        a0 = self.coeffs[0]
        if a0 == 0:
            raise SingularSeriesError("reciprocal of a series with zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / a0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i]
            out[k] = -acc / a0
        return TruncatedSeries(tuple(out))

    def sqrt(self) -> "TruncatedSeries":
        a0 = self.coeffs[0]
        if a0 <= 0:
            raise SingularSeriesError(
                "series square root needs a positive constant term"
            )
        b0 = _sqrt_fraction(a0)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = b0
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k):
                acc += out[i] * out[k - i]
            out[k] = (self.coeffs[k] - acc) / (2 * b0)
        return TruncatedSeries(tuple(out))


def _one_minus_4r(order: int) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([1, -4], order)


# -- Takeda coefficient tables -------------------------------------------------

@dataclass(frozen=True)
class TakedaTable:
    """Exact tables alpha_(j,k) = [r^k] phi_j / j! and beta_k = [r^k] psi."""

    j_max: int
    k_max: int
    alpha: dict[tuple[int, int], Fraction]
    beta: dict[int, Fraction]

    def render_csv(self) -> str:
        lines = ["j,k,alpha_num,alpha_den"]
        for j in range(self.j_max + 1):
            for k in range(self.k_max + 1):
                a = self.alpha[(j, k)]
                lines.append(f"{j},{k},{a.numerator},{a.denominator}")
        lines.append("")
        lines.append("k,beta_num,beta_den")
        for k in range(self.k_max + 1):
            b = self.beta[k]
            lines.append(f"{k},{b.numerator},{b.denominator}")
        return "\n".join(lines) + "\n"


def takeda_coefficients(j_max: int, k_max: int) -> TakedaTable:
    """Coefficient tables of phi_j(r) = ((1 + sqrt(1-4r))/2)^(-2j) and
    psi(r) = (1 - 4r)^(-1/2)."""
    if j_max < 0 or k_max < 0:
        raise ValueError("table extents must be >= 0")
    order = k_max
    root = _one_minus_4r(order).sqrt()
    half_sum = (root + 1) * Fraction(1, 2)
    base = half_sum.reciprocal()  # ((1 + sqrt(1-4r))/2)^(-1)
    alpha: dict[tuple[int, int], Fraction] = {}
    for j in range(j_max + 1):
        phi_j = base ** (2 * j)
        fact = Fraction(1, math.factorial(j))
        for k in range(k_max + 1):
            alpha[(j, k)] = phi_j.coefficient(k) * fact
    psi = root.reciprocal()
    beta = {k: psi.coefficient(k) for k in range(k_max + 1)}
    return TakedaTable(j_max=j_max, k_max=k_max, alpha=alpha, beta=beta)


# -- characteristic-root series ------------------------------------------------

def slow_root_series(order: int) -> TruncatedSeries:
    """Series of the slow root mu(l) = (-1 + sqrt(1 - 4l)) / 2."""
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    root = _one_minus_4r(order).sqrt()
    return (root - 1) * Fraction(1, 2)


def slow_root_offset_series(order: int) -> TruncatedSeries:
    """Series of mu(l) + l: zero through order 1, then negated Catalan
    numbers (-1, -2, -5, -14, ... from order 2)."""
    mu = slow_root_series(order)
    return mu + TruncatedSeries.from_coeffs([0, 1], order)


def slow_branch_amplitude_series(order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Amplitude of the slow-branch part of the modal solution.

    With roots mu+ and mu- and data u0 = v0 - u1, the slow coefficient is
    (u1 - mu- u0)/(mu+ - mu-), which splits over the (v0, u1) basis as
    ((1+S)/(2S), (1-S)/(2S)) with S = sqrt(1-4l).  Returns the pair
    (v0-part, u1-part).
    """
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    root = _one_minus_4r(order).sqrt()
    inv2s = (root * 2).reciprocal()
    on_v0 = (root + 1) * inv2s
    on_u1 = (-root + 1) * inv2s
    return on_v0, on_u1


# -- bigraded series in (l, t) --------------------------------------------------

@dataclass(frozen=True)
class BigradedSeries:
    """Exact series in l and t, truncated by grade and by l-order.

    Entries map (a, b) -> coefficient of l^a t^b.  Stored entries satisfy
    b <= a and a - b <= grade_cap and a <= order_cap; grades add under
    multiplication so truncation by grade is exact for retained entries.
    """

    entries: tuple[tuple[tuple[int, int], Fraction], ...]
    grade_cap: int
    order_cap: int

    @staticmethod
    def build(data: dict[tuple[int, int], Fraction], grade_cap: int,
              order_cap: int) -> "BigradedSeries":
        if grade_cap < 0 or order_cap < 0:
            raise ValueError("caps must be >= 0")
        kept = {}
        for (a, b), coef in data.items():
            if b > a:
                raise ValueError(f"entry t^{b} l^{a} has t-power above l-power")
            if coef == 0:
                continue
            if a - b <= grade_cap and a <= order_cap:
                kept[(a, b)] = Fraction(coef)
        items = tuple(sorted(kept.items()))
        return BigradedSeries(items, grade_cap, order_cap)

    @staticmethod
    def from_l_series(series: TruncatedSeries, grade_cap: int,
                      order_cap: int, t_power: int = 0) -> "BigradedSeries":
        data = {
            (a, t_power): c
            for a, c in enumerate(series.coeffs)
            if c != 0 and a >= t_power
        }
        return BigradedSeries.build(data, grade_cap, order_cap)

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.entries)

    def _caps_match(self, other: "BigradedSeries"):
        if (self.grade_cap, self.order_cap) != (other.grade_cap, other.order_cap):
            raise ValueError("bigraded operands have different truncation caps")

    def __add__(self, other: "BigradedSeries") -> "BigradedSeries":
        self._caps_match(other)
        data = dict(self.entries)
        for key, coef in other.entries:
            data[key] = data.get(key, Fraction(0)) + coef
        return BigradedSeries.build(data, self.grade_cap, self.order_cap)

    def __mul__(self, other):
        if isinstance(other, BigradedSeries):
            self._caps_match(other)
            data: dict[tuple[int, int], Fraction] = {}
            for (a1, b1), c1 in self.entries:
                for (a2, b2), c2 in other.entries:
                    a, b = a1 + a2, b1 + b2
                    if a - b > self.grade_cap or a > self.order_cap:
                        continue
                    data[(a, b)] = data.get((a, b), Fraction(0)) + c1 * c2
            return BigradedSeries.build(data, self.grade_cap, self.order_cap)
        f = Fraction(other)
        return BigradedSeries.build(
            {key: c * f for key, c in self.entries}, self.grade_cap, self.order_cap
        )

    __rmul__ = __mul__

    def min_grade(self) -> int:
        if not self.entries:
            return self.grade_cap + 1
        return min(a - b for (a, b), _ in self.entries)

    def exp(self) -> "BigradedSeries":
        """Exponential of a series with min grade >= 1 (finite grade sum)."""
        if self.entries and self.min_grade() < 1:
            raise ValueError("exp needs every entry to have positive grade")
        one = BigradedSeries.build({(0, 0): Fraction(1)}, self.grade_cap, self.order_cap)
        result = one
        power = one
        for n in range(1, self.grade_cap + 1):
            power = power * self
            if not power.entries:
                break
            result = result + power * Fraction(1, math.factorial(n))
        return result

    def slice(self, ell: int) -> dict[int, Fraction]:
        """Coefficients {b: coeff of l^(ell+b) t^b} of the grade-ell part."""
        if ell > self.grade_cap:
            raise SeriesCapacityError(
                f"grade {ell} beyond the stored grade cap {self.grade_cap}"
            )
        if 2 * ell > self.order_cap:
            raise SeriesCapacityError(
                f"grade {ell} needs l-order {2 * ell}, stored cap {self.order_cap}"
            )
        return {b: c for (a, b), c in self.entries if a - b == ell}


# -- coefficient verification ---------------------------------------------------

def expected_profile_coefficients(ell: int) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """Closed-form grade-ell coefficient arrays of the asymptotic profile.

    Returns ({j: coeff of t^j on v0}, {k: coeff of t^k on u1}) where the
    profile is l^ell sum_j C(2l-1, l+j-1)(-lt)^j/j! v0 + ... so the entry
    at t^j carries l^(ell+j).
    """
    if ell < 0:
        raise ValueError("grade must be >= 0")
    if ell == 0:
        return {0: Fraction(1)}, {}
    on_v0 = {
        j: Fraction((-1) ** j * math.comb(2 * ell - 1, ell + j - 1),
                    math.factorial(j))
        for j in range(ell + 1)
    }
    on_u1 = {
        k: Fraction((-1) ** k * math.comb(2 * ell - 1, ell + k),
                    math.factorial(k))
        for k in range(ell)
    }
    return on_v0, on_u1


@dataclass(frozen=True)
class CoefficientCheck:
    ell: int
    basis: str
    t_power: int
    expected: Fraction
    actual: Fraction

    @property
    def match(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class CoefficientReport:
    m_max: int
    entries: tuple[CoefficientCheck, ...]

    @property
    def all_match(self) -> bool:
        return all(e.match for e in self.entries)

    @property
    def mismatches(self) -> tuple[CoefficientCheck, ...]:
        return tuple(e for e in self.entries if not e.match)


def verify_expansion_coefficients(m_max: int) -> CoefficientReport:
    """Certify the expansion's binomial arrays against the exact slow branch.

    Expands amplitude(l) * exp((mu(l) + l) t) bigraded in (l, t) on the v0
    and u1 bases and compares each grade-ell slice, ell <= m_max, with the
    closed-form arrays.  All arithmetic is rational, so agreement is exact.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if m_max > 8:
        raise ValueError("m_max above 8 is outside the verified range")
    order_cap = 2 * m_max
    offset = slow_root_offset_series(order_cap)
    if offset.coefficient(0) != 0 or (order_cap >= 1 and offset.coefficient(1) != 0):
        raise AssertionError("slow-root offset must vanish through order 1")
    amp_v0, amp_u1 = slow_branch_amplitude_series(order_cap)
    shift = BigradedSeries.from_l_series(offset, m_max, order_cap, t_power=1)
    growth = shift.exp()
    checks: list[CoefficientCheck] = []
    for basis, amp in (("v0", amp_v0), ("u1", amp_u1)):
        branch = BigradedSeries.from_l_series(amp, m_max, order_cap) * growth
        for ell in range(m_max + 1):
            actual = branch.slice(ell)
            exp_v0, exp_u1 = expected_profile_coefficients(ell)
            expected = exp_v0 if basis == "v0" else exp_u1
            for b in sorted(set(actual) | set(expected)):
                checks.append(
                    CoefficientCheck(
                        ell=ell,
                        basis=basis,
                        t_power=b,
                        expected=expected.get(b, Fraction(0)),
                        actual=actual.get(b, Fraction(0)),
                    )
                )
    return CoefficientReport(m_max=m_max, entries=tuple(checks))
