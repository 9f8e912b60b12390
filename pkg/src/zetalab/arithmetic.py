"""Integer sieves, divisor correlation sums and the Euler product a3.

The divisor tables are built with a multiples sieve: d = 1 * 1 and
d3 = d * 1 as Dirichlet convolutions, each in O(limit log limit).

The Euler product

    a3 = prod_p (1 - 1/p)^4 (1 + 4/p + 1/p^2)

is computed two ways: a direct product over sieved primes and a series
that routes the contribution of large primes through prime zeta values.
Both report a rigorous bound on |log(true/computed)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numba
import numpy as np

from .zeta_engine import zeta_minus_one

MAX_SIEVE_LIMIT = 10**9
# ρ = 2 + √3: the reciprocal roots of 1 + 4x + x² have modulus ρ and 1/ρ
RHO = 2.0 + math.sqrt(3.0)
_INT64_MAX = np.iinfo(np.int64).max
# primes summed explicitly for the large-k tails in a3_accelerated
_TAIL_PRIMES = 100_000


@dataclass(frozen=True)
class DivisorTable:
    """Sieved d(n) and d3(n) for 1 <= n <= limit.

    Arrays are stored with a dummy slot at index 0 so that ``d[n]`` is the
    value at n. The arrays are made read-only after construction.
    """

    limit: int
    d: np.ndarray
    d3: np.ndarray

    def __post_init__(self):
        self.d.setflags(write=False)
        self.d3.setflags(write=False)


@dataclass(frozen=True)
class EulerProductValue:
    """An approximation of a3 with a bound on the log of the omitted part."""

    value: float
    prime_limit: int
    tail_bound: float
    method: str = "direct"

    @property
    def log_value(self) -> float:
        return math.log(self.value)


@numba.njit(cache=True)
def _convolve_with_ones(f, limit):
    # out[n] = sum_{k | n} f[n // k]
    out = np.zeros(limit + 1, dtype=np.int64)
    for k in range(1, limit + 1):
        q = 1
        for m in range(k, limit + 1, k):
            out[m] += f[q]
            q += 1
    return out


def sieve_divisor_tables(limit: int) -> DivisorTable:
    """Build d(n) and d3(n) for n <= limit.

    Memory is three int64 arrays of length limit + 1; limits up to about
    1e8 are practical, 1e9 and above are refused.
    """
    limit = int(limit)
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if limit >= MAX_SIEVE_LIMIT:
        raise ValueError(f"sieve limit {limit} exceeds the supported maximum {MAX_SIEVE_LIMIT - 1}")
    ones = np.ones(limit + 1, dtype=np.int64)
    ones[0] = 0
    d = _convolve_with_ones(ones, limit)
    d3 = _convolve_with_ones(d, limit)
    return DivisorTable(limit=limit, d=d, d3=d3)


def prime_sieve(limit: int) -> np.ndarray:
    """Primes p <= limit as an int64 array (Eratosthenes)."""
    limit = int(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[i]:
            is_prime[i * i :: 2 * i] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def mobius(n: int) -> int:
    """Möbius function by trial division (small n only)."""
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def correlation_sum(table: DivisorTable, x: int, h: int) -> int:
    """Exact sum_{n <= x} d3(n) d3(n + h)."""
    x, h = int(x), int(h)
    if x < 1 or h < 1:
        raise ValueError(f"x and h must be positive, got x={x}, h={h}")
    if x + h > table.limit:
        raise ValueError(
            f"sieve range too small: need x + h = {x + h} <= limit = {table.limit}"
        )
    a = table.d3[1 : x + 1]
    b = table.d3[1 + h : x + h + 1]
    peak = int(a.max()) * int(b.max())
    if peak * x < _INT64_MAX:
        return int(np.dot(a, b))
    # int64 could overflow: accumulate exactly in Python integers
    total = 0
    step = max(1, _INT64_MAX // peak)
    for lo in range(0, x, step):
        total += int(np.dot(a[lo : lo + step], b[lo : lo + step]))
    return total


# --- Euler product a3 ----------------------------------------------------


def _log_local_factor(p: np.ndarray) -> np.ndarray:
    x = 1.0 / np.asarray(p, dtype=np.float64)
    return 4.0 * np.log1p(-x) + np.log1p(x * (4.0 + x))


@lru_cache(maxsize=None)
def log_factor_coefficient(k: int) -> Fraction:
    """Coefficient c_k of x^k in 4 log(1 - x) + log(1 + 4x + x^2).

    Writing 1 + 4x + x^2 = (1 - ax)(1 - bx) with a + b = -4, ab = 1 gives
    c_k = -(4 + a^k + b^k) / k, and a^k + b^k is an integer power sum.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    # power sums s_k = a^k + b^k satisfy s_k = -4 s_{k-1} - s_{k-2}
    s_prev, s = 2, -4
    for _ in range(k - 1):
        s_prev, s = s, -4 * s - s_prev
    return Fraction(-(4 + s), k)


def _coefficient_abs_bound(k: int) -> float:
    return (5.0 + RHO**k) / k


def _log_factor_tail_bound(y: int) -> float:
    """Bound on sum_{p > y} |log local factor at p|.

    Uses |f(x)| <= x^2 (9 + sum_{k>=3} |c_k| x0^(k-2)) for x <= x0 and
    sum_{n > y} n^-2 <= 1/y. Small y get explicit terms first so that
    rho * x0 < 1.
    """
    y = int(y)
    y_switch = max(y, 20)
    explicit = 0.0
    if y < y_switch:
        n = np.arange(y + 1, y_switch + 1)
        explicit = float(np.sum(np.abs(_log_local_factor(n))))
    x0 = 1.0 / (y_switch + 1)
    higher = (5.0 / 3.0) * x0 / (1.0 - x0) + (RHO**2 / 3.0) * RHO * x0 / (1.0 - RHO * x0)
    return explicit + (9.0 + higher) / y_switch


def a3_direct(prime_limit: int) -> EulerProductValue:
    """a3 as a truncated product over p <= prime_limit, summed in log space."""
    prime_limit = int(prime_limit)
    if prime_limit < 2:
        raise ValueError(f"prime_limit must be >= 2, got {prime_limit}")
    primes = prime_sieve(prime_limit)
    log_value = math.fsum(_log_local_factor(primes))
    return EulerProductValue(
        value=math.exp(log_value),
        prime_limit=int(primes[-1]),
        tail_bound=_log_factor_tail_bound(prime_limit),
        method="direct",
    )


def prime_zeta(k: int, precision: float = 1e-16) -> float:
    """P(k) = sum_p p^-k via P(k) = sum_m mu(m)/m log zeta(k m)."""
    k = int(k)
    if k < 2:
        raise ValueError(f"prime zeta diverges for k < 2, got k={k}")
    return _prime_zeta_with_bound(k, precision)[0]


def _prime_zeta_with_bound(k: int, precision: float) -> tuple[float, float]:
    terms = []
    m = 1
    while True:
        mu = mobius(m)
        if mu:
            terms.append(mu * math.log1p(zeta_minus_one(k * m)) / m)
        # remaining terms: |log zeta(s)| <= zeta(s) - 1 <= 3 * 2^-s for s >= 2
        remainder = 3.0 * 2.0 ** (-k * (m + 1)) / ((m + 1) * (1.0 - 2.0**-k))
        if remainder < precision:
            break
        m += 1
    return math.fsum(terms), remainder


def a3_accelerated(series_depth: int = 16, prime_limit: int = 100) -> EulerProductValue:
    """a3 from an explicit product over small primes and a prime-zeta series.

    log a3 = sum_{p <= y} f(1/p) + sum_{k=2}^{K} c_k sum_{p > y} p^-k
    with the omitted k > K part bounded geometrically in rho / y. Primes up
    to at least 7 are always taken directly so that rho / y < 1.

    The inner tail sum_{p > y} p^-k is P(k) - sum_{p <= y} p^-k for small k.
    For larger k that difference cancels badly, so the tail is summed over
    y < p <= _TAIL_PRIMES with the rest bounded by an integral.
    """
    series_depth = int(series_depth)
    if series_depth < 2:
        raise ValueError(f"series_depth must be >= 2, got {series_depth}")
    y = max(int(prime_limit), 7)
    primes = prime_sieve(max(y, _TAIL_PRIMES))
    pf = primes.astype(np.float64)
    head = primes <= y
    parts = [math.fsum(_log_local_factor(primes[head]))]
    zeta_error = 0.0
    Y = float(_TAIL_PRIMES)
    for k in range(2, series_depth + 1):
        ck = float(log_factor_coefficient(k))
        # sum_{p > Y} p^-k <= int_Y^inf u^-k du = Y^(1-k) / (k-1)
        far = Y ** (1 - k) / (k - 1)
        if abs(ck) * far < 1e-19 and Y > y:
            tail = math.fsum(pf[~head] ** (-k))
            zeta_error += abs(ck) * (far + 1e-16 * tail)
        else:
            pk, err = _prime_zeta_with_bound(k, 1e-18)
            tail = pk - math.fsum(pf[head] ** (-k))
            # precision of P(k) plus rounding in the difference
            zeta_error += abs(ck) * (err + 4e-16 * pk)
        parts.append(ck * tail)
    K = series_depth
    truncation = (
        5.0 * y ** (-K) / (1.0 - 1.0 / y) + RHO ** (K + 1) * y ** (-K) / (1.0 - RHO / y)
    ) / (K * (K + 1))
    return EulerProductValue(
        value=math.exp(math.fsum(parts)),
        prime_limit=int(primes[head][-1]),
        tail_bound=truncation + zeta_error,
        method="accelerated",
    )
