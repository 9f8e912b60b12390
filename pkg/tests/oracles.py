"""Independent reference implementations used only by the tests.

Nothing here shares code with the package: divisor counts come from
explicit enumeration, Dirichlet sums from mpmath term by term, and
integrals from plain midpoint sums.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np


def divisor_count_brute(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if n % k == 0)


def d3_by_triples(limit: int) -> list[int]:
    """d3[n] for n <= limit by enumerating ordered triples a*b*c = n."""
    d3 = [0] * (limit + 1)
    for a in range(1, limit + 1):
        for b in range(1, limit // a + 1):
            ab = a * b
            for c in range(1, limit // ab + 1):
                d3[ab * c] += 1
    return d3


def d3_by_factorization(n: int) -> int:
    """d3(n) = prod over p^e || n of C(e + 2, 2); a second, separate route."""
    total = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        total *= (e + 1) * (e + 2) // 2
        p += 1
    if n > 1:
        total *= 3
    return total


def mp_dirichlet(t: float, coefficients, dps: int = 30) -> complex:
    """sum_n a_n n^(-1/2 - it) in mpmath."""
    with mpmath.workdps(dps):
        s = mpmath.mpc(0.5, t)
        total = mpmath.fsum(a * mpmath.power(n, -s) for n, a in enumerate(coefficients, start=1) if a)
        return complex(total)


def mp_z(t: float) -> float:
    with mpmath.workdps(30):
        return float(mpmath.siegelz(t))


def mp_theta(t: float) -> float:
    with mpmath.workdps(30):
        return float(mpmath.siegeltheta(t))


def midpoint_sum(f, a: float, b: float, n: int) -> complex:
    h = (b - a) / n
    t = a + h * (np.arange(n) + 0.5)
    v = np.asarray(f(t))
    return complex(math.fsum(np.real(v)) * h, math.fsum(np.imag(v)) * h if np.iscomplexobj(v) else 0.0)


def bisect_sign_change(f, a: float, b: float, iterations: int = 80) -> float:
    fa = f(a)
    if (fa > 0) == (f(b) > 0):
        raise ValueError("no sign change on the bracket")
    for _ in range(iterations):
        m = 0.5 * (a + b)
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)
