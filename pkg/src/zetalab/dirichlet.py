"""Divisor Dirichlet polynomials on the critical line and closed-form main terms.

All Dirichlet sums are evaluated at s = 1/2 + it:

    D(t)        = sum_{n <= |t|/2pi} d(n) n^(-1/2-it)          (closed cutoff)
    D_N(t, P)   = sum_{n <= N} d(n) n^(-1/2-it) P(log n / log N)

The reflected values at 1 - s are the complex conjugates, since the
coefficients are real. Main terms are polynomial integrals on [0, 1] and
are evaluated by coefficient arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.polynomial import Polynomial

from ._kernels import power_sums, smallest_prime_factors
from .arithmetic import DivisorTable, EulerProductValue
from .zeta_engine import TWO_PI, ChiFactor, critical_values

FACTORIAL_9 = math.factorial(9)
SIXTH_MOMENT_NUMERATOR = 42
DIAGONAL_NUMERATOR = 28
CROSS_NUMERATOR = 14

MAIN_TERM_KINDS = ("K-theorem", "J-theorem", "sixth-moment", "cross-term", "half-moment")


@dataclass(frozen=True)
class WeightPolynomial:
    """Real polynomial in the monomial basis, variable on [0, 1]."""

    coefficients: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients) or (0.0,)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def constant(cls, c: float = 1.0) -> "WeightPolynomial":
        return cls((c,))

    @classmethod
    def from_poly(cls, poly: Polynomial) -> "WeightPolynomial":
        return cls(tuple(poly.coef))

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coefficients) if c != 0.0]
        return nz[-1] if nz else 0

    @property
    def poly(self) -> Polynomial:
        return Polynomial(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __call__(self, x):
        return self.poly(x)

    def derivative(self) -> "WeightPolynomial":
        return WeightPolynomial.from_poly(self.poly.deriv())

    def antiderivative(self) -> "WeightPolynomial":
        return WeightPolynomial.from_poly(self.poly.integ())

    def __add__(self, other: "WeightPolynomial") -> "WeightPolynomial":
        return WeightPolynomial.from_poly(self.poly + other.poly)

    def __mul__(self, c: float) -> "WeightPolynomial":
        return WeightPolynomial.from_poly(self.poly * float(c))

    __rmul__ = __mul__


@dataclass(frozen=True)
class MainTermSpec:
    kind: str
    theta: float
    a3: EulerProductValue
    weight: WeightPolynomial = field(default_factory=WeightPolynomial)

    def __post_init__(self):
        if self.kind not in MAIN_TERM_KINDS:
            raise ValueError(f"unknown main-term kind {self.kind!r}")
        if not 0.0 < self.theta <= 1.0:
            raise ValueError(f"theta must lie in (0, 1], got {self.theta}")

    @property
    def proven(self) -> bool:
        # the theorems are established for theta < 1/2; theta <= 1 is conjectural
        return self.theta < 0.5


# --- Dirichlet sums ------------------------------------------------------


def _masked_power_sum(t: np.ndarray, cutoffs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """sum_{n <= cutoff_i} weights[n-1] n^(-i t_i) for every i."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    spf = smallest_prime_factors(weights.size)
    return power_sums(t.ravel(), np.ascontiguousarray(cutoffs, dtype=np.int64).ravel(),
                      np.ascontiguousarray(weights, dtype=np.float64), spf).reshape(t.shape)


def cutoff_index(t) -> np.ndarray:
    """floor(|t| / 2pi), the length of the truncated divisor sum at t."""
    return np.floor(np.abs(np.asarray(t, dtype=np.float64)) / TWO_PI).astype(np.int64)


def _half_weights(table: DivisorTable, m: int) -> np.ndarray:
    n = np.arange(1, m + 1, dtype=np.float64)
    return table.d[1 : m + 1].astype(np.float64) / np.sqrt(n)


def d_truncated(t, table: DivisorTable, reflected: bool = False):
    """Truncated divisor sum D(1/2 + it), or D(1/2 - it) when reflected."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    cut = cutoff_index(t_arr)
    m = int(cut.max()) if cut.size else 0
    if m > table.limit:
        raise ValueError(f"divisor table too small: need limit >= {m}, have {table.limit}")
    value = _masked_power_sum(t_arr, cut, _half_weights(table, max(m, 1)))
    if reflected:
        value = np.conj(value)
    return complex(value[0]) if np.ndim(t) == 0 else value


def d_n_weights(N: float, P: WeightPolynomial, table: DivisorTable) -> np.ndarray:
    """Coefficients d(n) n^(-1/2) P(log n / log N) for n <= N."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    m = int(math.floor(N + 1e-9))
    if m > table.limit:
        raise ValueError(f"divisor table too small: need limit >= {m}, have {table.limit}")
    if m == 1:
        # log N = 0: keep the continuous limit of the n = 1 term, P(0)
        return np.array([P(0.0)], dtype=np.float64)
    n = np.arange(1, m + 1, dtype=np.float64)
    return _half_weights(table, m) * P(np.log(n) / math.log(N))


def d_n_weighted(t, N: float, P: WeightPolynomial, table: DivisorTable, reflected: bool = False):
    """D_N(1/2 + it, P), or D_N(1/2 - it, P) when reflected."""
    w = d_n_weights(N, P, table)
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    value = _masked_power_sum(t_arr, np.full(t_arr.shape, w.size, dtype=np.int64), w)
    if reflected:
        value = np.conj(value)
    return complex(value[0]) if np.ndim(t) == 0 else value


def direct_dirichlet_sum(t: float, coefficients: Sequence[float]) -> complex:
    """sum_n coefficients[n-1] n^(-1/2-it), term by term."""
    total = 0j
    for n, a in enumerate(coefficients, start=1):
        total += a * complex(n) ** complex(-0.5, -t)
    return total


def afe_reconstruct(t: float, table: DivisorTable, chi: ChiFactor) -> complex:
    """D(s) + chi(s)^2 D(1 - s) at s = 1/2 + it (the E term omitted)."""
    if chi.t != t:
        raise ValueError(f"chi factor evaluated at t={chi.t}, expected t={t}")
    d = d_truncated(t, table)
    return d + chi.value**2 * np.conj(d)


def afe_residual(t, table: DivisorTable):
    """|zeta(1/2+it)^2 - D(s) - chi(s)^2 D(1-s)| / log(2 + |t|).

    Works at any real t; below the asymptotic threshold zeta and chi come
    from the oracle route.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    z, th = critical_values(t_arr)
    zeta_sq = np.exp(-2j * th) * z * z
    chi_sq = np.exp(-4j * th)
    d = d_truncated(t_arr, table)
    recon = d + chi_sq * np.conj(d)
    value = np.abs(zeta_sq - recon) / np.log(2.0 + np.abs(t_arr))
    return float(value[0]) if np.ndim(t) == 0 else value


# --- main terms -----------------------------------------------------------


def hyp2f1_case(z):
    """Terminating 2F1(-2, -3; 6; z) summed term by term."""
    z = np.asarray(z, dtype=np.float64)
    a, b, c = -2, -3, 6
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(2):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total = total + term
    return total if total.ndim else float(total)


def h_transform(P: WeightPolynomial) -> WeightPolynomial:
    """h(alpha) = int_alpha^1 (beta - alpha)^2 P(beta) d beta, exactly.

    Expanding (beta - alpha)^2 = beta^2 - 2 alpha beta + alpha^2 and
    integrating each monomial beta^(j+i) over [alpha, 1].
    """
    alpha = Polynomial([0.0, 1.0])
    h = Polynomial([0.0])
    for j, p in enumerate(P.coefficients):
        if p == 0.0:
            continue
        for power, factor in ((2, Polynomial([1.0])), (1, -2.0 * alpha), (0, alpha**2)):
            e = j + power + 1
            # int_alpha^1 beta^(e-1) = (1 - alpha^e) / e
            h = h + p * factor * (1.0 - alpha**e) / e
    return WeightPolynomial.from_poly(h)


def _integrate_unit(poly: Polynomial) -> float:
    anti = poly.integ()
    return float(anti(1.0) - anti(0.0))


def k_alpha_integral(theta: float, P: WeightPolynomial) -> float:
    """int_0^1 P(alpha) alpha^5 2F1(-2,-3;6;-alpha theta) d alpha."""
    alpha = Polynomial([0.0, 1.0])
    hyp = 1.0 - theta * alpha + (theta * alpha) ** 2 / 7.0
    return _integrate_unit(P.poly * alpha**5 * hyp)


def j_alpha_integral(theta: float, P: WeightPolynomial) -> float:
    """int_0^1 alpha^3 (h'^2 / theta + 4 h h') d alpha with h = h_transform(P)."""
    h = h_transform(P).poly
    hp = h.deriv()
    alpha = Polynomial([0.0, 1.0])
    return _integrate_unit(alpha**3 * (hp * hp / theta + 4.0 * h * hp))


def _require_T(T: float) -> None:
    if T <= math.e:
        raise ValueError(f"T must exceed e so that log N > 0, got {T}")


def k_main_coefficient(spec: MainTermSpec) -> float:
    """Constant c with K_N(T) ~ c T (log N)^9."""
    return spec.a3.value / (720.0 * spec.theta**3) * k_alpha_integral(spec.theta, spec.weight)


def j_main_coefficient(spec: MainTermSpec) -> float:
    """Constant c with J_N(T) ~ c T (log N)^9."""
    return spec.a3.value / 24.0 * j_alpha_integral(spec.theta, spec.weight)


def k_main_term(spec: MainTermSpec, T: float) -> float:
    if spec.kind != "K-theorem":
        raise ValueError(f"k_main_term needs a K-theorem spec, got {spec.kind!r}")
    _require_T(T)
    log_n = spec.theta * math.log(T)
    return k_main_coefficient(spec) * T * log_n**9


def j_main_term(spec: MainTermSpec, T: float) -> float:
    if spec.kind != "J-theorem":
        raise ValueError(f"j_main_term needs a J-theorem spec, got {spec.kind!r}")
    _require_T(T)
    log_n = spec.theta * math.log(T)
    return j_main_coefficient(spec) * T * log_n**9


def main_term_log_t_coefficient(spec: MainTermSpec) -> float:
    """The same main term expressed as c' T (log T)^9, c' = c theta^9."""
    if spec.kind == "K-theorem":
        return k_main_coefficient(spec) * spec.theta**9
    if spec.kind == "J-theorem":
        return j_main_coefficient(spec) * spec.theta**9
    constants = conjecture_constants(spec.a3)
    return {
        "sixth-moment": constants.c_sixth,
        "cross-term": constants.c_cross,
        "half-moment": constants.c_sixth / 2.0,
    }[spec.kind]


@dataclass(frozen=True)
class ConjectureConstants:
    c_sixth: float
    c_diagonal: float
    c_cross: float
    sixth_ratio: Fraction
    diagonal_ratio: Fraction
    cross_ratio: Fraction


def conjecture_constants(a3: EulerProductValue) -> ConjectureConstants:
    """42 a3 / 9!, 28 a3 / 9! and 14 a3 / 9!, with 28 + 14 = 42 checked exactly."""
    sixth = Fraction(SIXTH_MOMENT_NUMERATOR, FACTORIAL_9)
    diagonal = Fraction(DIAGONAL_NUMERATOR, FACTORIAL_9)
    cross = Fraction(CROSS_NUMERATOR, FACTORIAL_9)
    if diagonal + cross != sixth:
        raise ArithmeticError("diagonal and cross constants do not add up to the sixth-moment constant")
    a = a3.value
    return ConjectureConstants(
        c_sixth=float(sixth) * a,
        c_diagonal=float(diagonal) * a,
        c_cross=float(cross) * a,
        sixth_ratio=sixth,
        diagonal_ratio=diagonal,
        cross_ratio=cross,
    )
