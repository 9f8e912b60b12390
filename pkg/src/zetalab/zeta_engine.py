"""Critical-line evaluation of zeta, the Riemann-Siegel theta function and chi.

Two independent routes are kept side by side:

* the production route: Stirling series for theta(t) and the Riemann-Siegel
  formula with corrections C0..C7 for Z(t);
* the oracle route: complex log-gamma (Stirling after an upward shift) for
  theta and chi, and Euler-Maclaurin summation for zeta(s).

On the critical line zeta(1/2 + it) = exp(-i theta(t)) Z(t) and
chi(1/2 + it) = exp(-2i theta(t)).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

from ._kernels import horner_rows, rs_main_sums, smallest_prime_factors

T_MIN = 10.0
# C0..C3 leave ~1e-4 at t = 14; seven corrections keep |error| < 1e-7 from t_min up
RS_CORRECTIONS = 7

TWO_PI = 2.0 * math.pi
LOG_PI = math.log(math.pi)
LOG_2PI = math.log(TWO_PI)


@lru_cache(maxsize=None)
def bernoulli_numbers(n_max: int) -> tuple[Fraction, ...]:
    """B_0..B_n_max as exact fractions (B_1 = -1/2 convention)."""
    b = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b.append(-acc / (m + 1))
    return tuple(b)


def _theta_series_coefficients(n_terms: int) -> list[float]:
    # coefficient of t^-(n-1) for even n = 2, 4, ...
    b = bernoulli_numbers(2 * n_terms)
    out = []
    for j in range(1, n_terms + 1):
        n = 2 * j
        c = (-1) ** (j - 1) * (1 - Fraction(2) ** (1 - n)) * b[n] / (2 * n * (n - 1))
        out.append(float(c))
    return out


_THETA_COEFFS = _theta_series_coefficients(7)


def _as_array(t):
    return np.asarray(t, dtype=np.float64)


def _check_t_min(t: np.ndarray) -> None:
    if np.any(np.abs(t) < T_MIN):
        raise ValueError(
            f"|t| >= {T_MIN} required for the asymptotic series; "
            "use theta_oracle / zeta_euler_maclaurin for small t"
        )


def theta(t):
    """Riemann-Siegel theta for |t| >= T_MIN via the Stirling series.

    theta(t) = t/2 log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3) + ...
    Seven correction terms keep the truncation error below 1e-12 at
    t = 10. Odd in t.
    """
    t = _as_array(t)
    _check_t_min(t)
    a = np.abs(t)
    inv = 1.0 / a
    inv2 = inv * inv
    series = np.zeros_like(a)
    for c in reversed(_THETA_COEFFS):
        series = series * inv2 + c
    value = 0.5 * a * (np.log(a) - LOG_2PI) - 0.5 * a - math.pi / 8.0 + series * inv
    value = np.sign(t) * value
    return value if value.ndim else float(value)


# --- complex log-gamma oracle ------------------------------------------------

_STIRLING_COEFFS = [
    float(b / (k * (k - 1)))
    for k, b in ((2 * j, bernoulli_numbers(30)[2 * j]) for j in range(1, 15))
]


def loggamma(z, shift_to: float = 10.0):
    """Principal log-gamma for complex z with Re z > 0.

    The argument is shifted by integers until Re z >= shift_to and the
    Stirling series is applied there; the shift is undone with logs of
    z + k. Fourteen Bernoulli terms give ~1e-16 at |z| >= 10.
    """
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z.real <= 0):
        raise ValueError("loggamma oracle requires Re z > 0")
    shift = np.maximum(0, np.ceil(shift_to - z.real)).astype(np.int64)
    n_max = int(shift.max()) if shift.size else 0
    correction = np.zeros_like(z)
    for k in range(n_max):
        active = shift > k
        correction = correction + np.where(active, np.log(z + k), 0.0)
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    for c in reversed(_STIRLING_COEFFS):
        series = series * inv2 + c
    value = (w - 0.5) * np.log(w) - w + 0.5 * LOG_2PI + series * inv - correction
    return value if value.ndim else complex(value)


def theta_oracle(t):
    """theta(t) = Im loggamma(1/4 + it/2) - (t/2) log pi, valid for all real t."""
    t = _as_array(t)
    value = np.imag(loggamma(0.25 + 0.5j * t)) - 0.5 * t * LOG_PI
    return value if value.ndim else float(value)


@dataclass(frozen=True)
class ChiFactor:
    t: float
    value: complex


def chi_line(t: float) -> ChiFactor:
    """chi(1/2 + it) = exp(-2i theta(t)); unimodular on the line."""
    return ChiFactor(t=float(t), value=complex(np.exp(-2j * theta(t))))


def _log_cos(w):
    # log cos w for complex w without overflow when |Im w| is large
    w = np.asarray(w, dtype=np.complex128)
    sgn = np.where(w.imag <= 0, 1.0, -1.0)
    # cos w = e^{i sgn w} (1 + e^{-2i sgn w}) / 2 with |e^{-2i sgn w}| <= 1
    return 1j * sgn * w + np.log1p(np.exp(-2j * sgn * w)) - math.log(2.0)


def chi_direct(t):
    """chi(1/2 + it) from 2 (2pi)^-s Gamma(s) cos(pi s / 2) at s = 1/2 - it.

    Evaluated in log space through the log-gamma oracle.
    """
    t = _as_array(t)
    s = 0.5 - 1j * t
    log_chi = math.log(2.0) - s * LOG_2PI + loggamma(s) + _log_cos(0.5 * math.pi * s)
    value = np.exp(log_chi)
    return value if value.ndim else complex(value)


# --- Euler-Maclaurin oracle --------------------------------------------------


def _em_tail(s, n_start: int, n_bernoulli: int):
    """Sum_{n >= N} n^-s by Euler-Maclaurin, with an error bound.

    Returns (value, bound) where the bound is the first omitted term times
    |s + 2m + 1| / (Re s + 2m + 1).
    """
    s = np.asarray(s, dtype=np.complex128)
    N = float(n_start)
    b = bernoulli_numbers(2 * n_bernoulli + 2)
    value = N ** (1.0 - s) / (s - 1.0) + 0.5 * N ** (-s)
    # rising product s (s+1) ... (s+2k-2) / (2k)!, updated incrementally
    rising = s.copy()
    power = N ** (-s - 1.0)
    fact = 2.0
    for k in range(1, n_bernoulli + 1):
        value = value + float(b[2 * k]) / fact * rising * power
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
        power = power / (N * N)
        fact *= (2 * k + 1) * (2 * k + 2)
    m = n_bernoulli
    next_term = np.abs(float(b[2 * m + 2]) / fact * rising * power)
    bound = next_term * np.abs(s + 2 * m + 1) / (s.real + 2 * m + 1)
    return value, bound


def _default_em_terms(s) -> int:
    return int(np.max(np.abs(np.asarray(s)))) // 3 + 20


def zeta_euler_maclaurin(s, n_terms: int | None = None, n_bernoulli: int = 24,
                         return_bound: bool = False):
    """zeta(s) by Euler-Maclaurin summation with n_terms explicit terms.

    Valid for Re s > -1, s != 1. The default n_terms ~ |s|/3 keeps the
    Bernoulli tail geometrically small; pass return_bound=True to also get
    the remainder bound.
    """
    s = np.asarray(s, dtype=np.complex128)
    if np.any(s == 1.0):
        raise ValueError("zeta has a pole at s = 1")
    if np.any(s.real <= -1.0):
        raise ValueError("Euler-Maclaurin oracle requires Re s > -1")
    N = n_terms if n_terms is not None else _default_em_terms(s)
    if N < 1:
        raise ValueError("n_terms must be positive")
    n = np.arange(1, N, dtype=np.float64)
    flat = s.reshape(-1)
    head = np.empty(flat.shape, dtype=np.complex128)
    log_n = np.log(n)
    for lo in range(0, flat.size, 4096):
        chunk = flat[lo : lo + 4096]
        head[lo : lo + 4096] = np.exp(-np.outer(chunk, log_n)).sum(axis=1) if N > 1 else 0.0
    head = head.reshape(s.shape)
    tail, bound = _em_tail(s, N, n_bernoulli)
    value = head + tail
    if not value.ndim:
        value, bound = complex(value), float(bound)
    return (value, bound) if return_bound else value


def zeta_minus_one(s: float) -> float:
    """zeta(s) - 1 for real s > 1 with full relative precision.

    Direct series over 2 <= n < 10 plus the Euler-Maclaurin tail from 10.
    """
    s = float(s)
    if s <= 1.0:
        raise ValueError("zeta_minus_one requires real s > 1")
    head = math.fsum(float(n) ** -s for n in range(9, 1, -1))
    tail, _ = _em_tail(s, 10, 12)
    return head + float(np.real(tail))


def z_oracle(t):
    """Z(t) via Euler-Maclaurin zeta and the log-gamma theta (any real t)."""
    t = _as_array(t)
    value = np.real(np.exp(1j * theta_oracle(t)) * zeta_euler_maclaurin(0.5 + 1j * t))
    return value if value.ndim else float(value)


# --- Riemann-Siegel ----------------------------------------------------------


@lru_cache(maxsize=None)
def rs_coefficients(n: int) -> tuple[tuple[int, Fraction, int], ...]:
    """C_n = sum of c * Psi^(m)(p) / pi^e as (m, c, e) triples.

    Built from the d-recursion of Arias de Reyna (2011) with sigma = 1/2:
    d(n, k) = -(m + 1) d(n-1, k-2) + d(n-1, k) / (4m), m = 3n - 2k, and
    C_n gets d(n, k) (-1/2)^m / (-4)^(k/2) Psi^(m) / pi^(2n-k) for even k.
    The m = 0 entry of that recursion belongs to a complex normalization;
    for n = 4 it is replaced by the classical value (Gabcke: Psi / 128 pi^2).
    """
    if not 0 <= n <= 7:
        raise ValueError(f"correction index must lie in 0..7, got {n}")
    d = _rs_d_table(n)
    out = []
    for k in range(0, 3 * n // 2 + 1, 2):
        m = 3 * n - 2 * k
        c = d[n, k] * Fraction(-1, 2) ** m / Fraction(-4) ** (k // 2)
        if c:
            out.append((m, c, 2 * n - k))
    return tuple(out)


def _rs_d_table(n_max: int) -> dict:
    d = {(0, 0): Fraction(1)}
    for n in range(1, n_max + 1):
        for k in range(0, 3 * n // 2 + 1, 2):
            m = 3 * n - 2 * k
            if m:
                prev2 = d.get((n - 1, k - 2), Fraction(0))
                prev = d.get((n - 1, k), Fraction(0))
                d[n, k] = -(m + 1) * prev2 + prev * Fraction(1, 4 * m)
            else:
                # only n = 4 occurs for n <= 7
                d[n, k] = Fraction(-1, 2)
    return d


@lru_cache(maxsize=1)
def _correction_polys() -> np.ndarray:
    """C0..C7 as polynomials in x = p - 1/2, one row each (low order first).

    Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) is entire; its Taylor
    series at 1/2 is taken at 60 digits and each C_k is assembled from the
    derivative polynomials, so evaluation is one Horner pass per row.
    """
    import mpmath

    n_rows = RS_CORRECTIONS + 1
    with mpmath.workdps(60):
        def psi(p):
            return mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)

        coeffs = [float(c) for c in mpmath.taylor(psi, mpmath.mpf(1) / 2, 3 * n_rows + 60)]
    base = Polynomial(coeffs)
    rows = []
    for n in range(n_rows):
        row = Polynomial([0.0])
        for m, c, e in rs_coefficients(n):
            row = row + float(c) * base.deriv(m) / math.pi**e
        rows.append(row)
    width = max(len(r.coef) for r in rows)
    out = np.zeros((n_rows, width))
    for i, r in enumerate(rows):
        out[i, : len(r.coef)] = r.coef
    # drop terms below 1e-20 on |x| <= 1/2
    scale = np.max(np.abs(out) * 0.5 ** np.arange(width), axis=0)
    keep = int(np.flatnonzero(scale > 1e-20).max()) + 1
    return np.ascontiguousarray(out[:, :keep])


def rs_corrections(p):
    """C0..C7 at fractional part p in [0, 1); array of shape (8,) + p.shape."""
    p = np.asarray(p, dtype=np.float64)
    x = np.ascontiguousarray(p.ravel() - 0.5)
    table = _correction_polys()
    return horner_rows(table, x).reshape((table.shape[0],) + p.shape)


def _rs_main_sum(t: np.ndarray, th: np.ndarray, N: np.ndarray) -> np.ndarray:
    spf = smallest_prime_factors(int(N.max(initial=1)))
    return rs_main_sums(np.ascontiguousarray(t), np.ascontiguousarray(th),
                        np.ascontiguousarray(N, dtype=np.int64), spf)


def riemann_siegel_z(t, theta_values=None, corrections: int = RS_CORRECTIONS):
    """Riemann-Siegel Z(t) for |t| >= T_MIN using corrections C0..C_corrections."""
    t = _as_array(t)
    _check_t_min(t)
    scalar = t.ndim == 0
    # Z is even in t
    t = np.abs(np.atleast_1d(t))
    th = theta(t) if theta_values is None else np.abs(np.atleast_1d(theta_values))
    a = np.sqrt(t / TWO_PI)
    N = np.floor(a).astype(np.int64)
    p = a - N
    main = _rs_main_sum(t, np.atleast_1d(th), N)
    c = rs_corrections(p)
    rem = np.zeros_like(t)
    for k in reversed(range(corrections + 1)):
        rem = rem / a + c[k]
    sign = np.where(N % 2 == 1, 1.0, -1.0)
    value = main + sign * rem / np.sqrt(a)
    return float(value[0]) if scalar else value


def z_function(t, theta_values=None):
    """Z(t) for |t| >= T_MIN by the Riemann-Siegel formula with C0..C7."""
    return riemann_siegel_z(t, theta_values)


def critical_values(t):
    """(Z(t), theta(t)) for any t >= 0, switching to the oracle below T_MIN."""
    t = np.atleast_1d(_as_array(t))
    z = np.empty_like(t)
    th = np.empty_like(t)
    low = np.abs(t) < T_MIN
    if (~low).any():
        th[~low] = theta(t[~low])
        z[~low] = z_function(t[~low], th[~low])
    if low.any():
        th[low] = theta_oracle(t[low])
        zeta = zeta_euler_maclaurin(0.5 + 1j * t[low])
        z[low] = np.real(np.exp(1j * th[low]) * zeta)
    return z, th


@dataclass(frozen=True)
class CriticalSample:
    t: float
    z_value: float
    theta_value: float
    zeta_value: complex


def zeta_line(t: float) -> CriticalSample:
    """zeta(1/2 + it) assembled as exp(-i theta) Z."""
    th = theta(t)
    z = z_function(t, th)
    return CriticalSample(t=float(t), z_value=z, theta_value=th,
                          zeta_value=complex(np.exp(-1j * th) * z))


class CriticalGrid(Sequence):
    """Uniform grid of critical-line samples backed by arrays."""

    def __init__(self, t_start: float, dt: float, z: np.ndarray, theta_values: np.ndarray | None = None):
        self.t_start = float(t_start)
        self.dt = float(dt)
        self.z = np.asarray(z, dtype=np.float64)
        self.t = self.t_start + self.dt * np.arange(self.z.size)
        self.theta = theta(self.t) if theta_values is None else np.asarray(theta_values)

    def __len__(self):
        return self.z.size

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        th = float(self.theta[i])
        z = float(self.z[i])
        return CriticalSample(t=float(self.t[i]), z_value=z, theta_value=th,
                              zeta_value=complex(np.exp(-1j * th) * z))


def max_grid_step(t1: float) -> float:
    """Largest dt that resolves the local oscillation 2pi / log(t/2pi)."""
    rate = math.log(t1 / TWO_PI)
    return math.inf if rate <= 0 else TWO_PI / rate


def sample_uniform_grid(t0: float, t1: float, dt: float) -> CriticalGrid:
    """Samples at t0, t0 + dt, ... <= t1."""
    if not T_MIN <= t0 < t1:
        raise ValueError(f"need {T_MIN} <= t0 < t1, got t0={t0}, t1={t1}")
    if dt <= 0:
        raise ValueError("dt must be positive")
    limit = max_grid_step(t1)
    if dt > limit:
        raise ValueError(
            f"dt = {dt} under-resolves the oscillation near t1 = {t1}: "
            f"need dt <= 2pi/log(t1/2pi) = {limit:.6g}"
        )
    count = int(math.floor((t1 - t0) / dt + 1e-9)) + 1
    t = t0 + dt * np.arange(count)
    th = theta(t)
    return CriticalGrid(t0, dt, z_function(t, th), th)
