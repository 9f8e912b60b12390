"""Compiled inner loops for Dirichlet-type sums at many heights t.

n^(-it) is completely multiplicative in n, so for each t only primes need
a sine/cosine; composites are one complex product z[p] * z[n/p] with p the
smallest prime factor of n.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numba
import numpy as np


@numba.njit(cache=True)
def _spf_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, limit + 1):
        if spf[i] == 0:
            for j in range(i, limit + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


@lru_cache(maxsize=4)
def _spf_cached(size: int) -> np.ndarray:
    spf = _spf_sieve(size)
    cofactor = np.zeros_like(spf)
    cofactor[2:] = np.arange(2, size + 1) // spf[2:]
    # row 0: smallest prime factor, row 1: n / spf(n) (1 for primes)
    return np.ascontiguousarray(np.stack([spf, cofactor]))


def smallest_prime_factors(limit: int) -> np.ndarray:
    """Array (2, size+1): spf[n] and n // spf[n]; size is limit rounded up to 2^k."""
    size = 1 << max(4, int(limit).bit_length())
    return _spf_cached(size)


@numba.njit(cache=True)
def power_sums(t, cutoffs, weights, spf):
    """out[i] = sum_{n <= cutoffs[i]} weights[n-1] n^(-i t[i])."""
    m_max = 1
    for i in range(cutoffs.size):
        if cutoffs[i] > m_max:
            m_max = cutoffs[i]
    log_n = np.empty(m_max + 1)
    for n in range(1, m_max + 1):
        log_n[n] = math.log(n)
    zr = np.empty(m_max + 1)
    zi = np.empty(m_max + 1)
    out = np.empty(t.size, dtype=np.complex128)
    for i in range(t.size):
        m = cutoffs[i]
        if m <= 0:
            out[i] = 0.0
            continue
        ti = t[i]
        zr[1] = 1.0
        zi[1] = 0.0
        re = weights[0]
        im = 0.0
        for n in range(2, m + 1):
            q = spf[1, n]
            if q == 1:
                phase = ti * log_n[n]
                a = math.cos(phase)
                b = -math.sin(phase)
            else:
                p = spf[0, n]
                a = zr[p] * zr[q] - zi[p] * zi[q]
                b = zr[p] * zi[q] + zi[p] * zr[q]
            zr[n] = a
            zi[n] = b
            w = weights[n - 1]
            re += w * a
            im += w * b
        out[i] = complex(re, im)
    return out


@numba.njit(cache=True)
def rs_main_sums(t, th, N, spf):
    """out[i] = 2 sum_{n <= N[i]} n^(-1/2) cos(th[i] - t[i] log n)."""
    n_max = 1
    for i in range(N.size):
        if N[i] > n_max:
            n_max = N[i]
    zr = np.empty(n_max + 1)
    zi = np.empty(n_max + 1)
    inv_sqrt = np.empty(n_max + 1)
    for n in range(1, n_max + 1):
        inv_sqrt[n] = 1.0 / math.sqrt(n)
    out = np.empty(t.size)
    for i in range(t.size):
        ti = t[i]
        c = math.cos(th[i])
        s = math.sin(th[i])
        zr[1] = 1.0
        zi[1] = 0.0
        # Re(e^{i th} n^{-it}) = c a - s b
        acc = c
        for n in range(2, N[i] + 1):
            q = spf[1, n]
            if q == 1:
                phase = ti * math.log(n)
                a = math.cos(phase)
                b = -math.sin(phase)
            else:
                p = spf[0, n]
                a = zr[p] * zr[q] - zi[p] * zi[q]
                b = zr[p] * zi[q] + zi[p] * zr[q]
            zr[n] = a
            zi[n] = b
            acc += (c * a - s * b) * inv_sqrt[n]
        out[i] = 2.0 * acc if N[i] >= 1 else 0.0
    return out


@numba.njit(cache=True)
def horner_rows(coeffs, x):
    """Evaluate each row of coeffs (low order first) at every x."""
    k, deg = coeffs.shape
    out = np.empty((k, x.size))
    for j in range(x.size):
        xj = x[j]
        for r in range(k):
            acc = 0.0
            for d in range(deg - 1, -1, -1):
                acc = acc * xj + coeffs[r, d]
            out[r, j] = acc
    return out
