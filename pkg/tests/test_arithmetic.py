import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import d3_by_factorization, d3_by_triples, divisor_count_brute
from zetalab.arithmetic import (
    a3_accelerated,
    a3_direct,
    correlation_sum,
    log_factor_coefficient,
    mobius,
    prime_sieve,
    prime_zeta,
    sieve_divisor_tables,
)

A3_REFERENCE = 0.0493216735794000917  # 40-digit mpmath evaluation of the same product


# --- divisor tables ---------------------------------------------------------


def test_limit_one():
    t = sieve_divisor_tables(1)
    assert t.limit == 1
    assert t.d[1] == 1 and t.d3[1] == 1


def test_small_values():
    t = sieve_divisor_tables(100)
    assert t.d[12] == 6
    assert t.d3[12] == 18
    assert t.d3[4] == 6


def test_rejects_bad_limit():
    with pytest.raises(ValueError):
        sieve_divisor_tables(0)
    with pytest.raises(ValueError):
        sieve_divisor_tables(10**9)


def test_tables_read_only(small_table):
    with pytest.raises(ValueError):
        small_table.d[5] = 0


def test_against_brute_force():
    t = sieve_divisor_tables(300)
    triples = d3_by_triples(300)
    for n in range(1, 301):
        assert t.d[n] == divisor_count_brute(n)
        assert t.d3[n] == triples[n] == d3_by_factorization(n)


def test_primes_have_expected_counts(small_table):
    for p in prime_sieve(small_table.limit):
        assert small_table.d[p] == 2
        assert small_table.d3[p] == 3


def test_d3_total_counts_triples():
    limit = 2000
    t = sieve_divisor_tables(limit)
    assert int(t.d3[1:].sum()) == sum(d3_by_triples(limit))


def test_hyperbola_identity(small_table):
    prefix = np.cumsum(small_table.d[1:10_001])
    k = np.arange(1, 10_001)
    for x in range(1, 10_001):
        assert prefix[x - 1] == int(np.sum(x // k[:x]))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 140), st.integers(1, 140))
def test_multiplicativity(m, n):
    t = sieve_divisor_tables(140 * 140)
    if math.gcd(m, n) != 1:
        return
    assert t.d[m * n] == t.d[m] * t.d[n]
    assert t.d3[m * n] == t.d3[m] * t.d3[n]


def test_multiplicativity_random_pairs(small_table):
    rng = np.random.default_rng(3)
    checked = 0
    while checked < 1000:
        m, n = (int(v) for v in rng.integers(1, 2000, size=2))
        if m * n > small_table.limit or math.gcd(m, n) != 1:
            continue
        assert small_table.d[m * n] == small_table.d[m] * small_table.d[n]
        assert small_table.d3[m * n] == small_table.d3[m] * small_table.d3[n]
        checked += 1


# --- primes and Möbius ----------------------------------------------------


def test_prime_sieve():
    assert list(prime_sieve(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_sieve(1).size == 0
    assert prime_sieve(10**6).size == 78498


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


# --- correlation sums -------------------------------------------------------


def test_correlation_examples(small_table):
    assert correlation_sum(small_table, 1, 1) == 3
    d3 = d3_by_triples(12)
    assert correlation_sum(small_table, 10, 1) == sum(d3[n] * d3[n + 1] for n in range(1, 11))
    assert correlation_sum(small_table, 10, 1) == 273


def test_correlation_large_against_factorization(small_table):
    expected = sum(d3_by_factorization(n) * d3_by_factorization(n + 2) for n in range(1, 10_001))
    assert correlation_sum(small_table, 10_000, 2) == expected


def test_correlation_index_shift(small_table):
    d3 = small_table.d3
    for x, h in ((50, 3), (777, 10), (5000, 7)):
        shifted = sum(int(d3[m - h]) * int(d3[m]) for m in range(h + 1, x + h + 1))
        assert correlation_sum(small_table, x, h) == shifted


def test_correlation_range_checked(small_table):
    with pytest.raises(ValueError):
        correlation_sum(small_table, small_table.limit, 1)
    with pytest.raises(ValueError):
        correlation_sum(small_table, 0, 1)


def test_correlation_result_is_python_int(small_table):
    value = correlation_sum(small_table, 1000, 1)
    assert type(value) is int


# --- a3 -----------------------------------------------------------------------


def test_log_factor_coefficients():
    # 4 log(1 - x) + log(1 + 4x + x^2) = -9 x^2 + 16 x^3 - 99/2 x^4 + ...
    assert log_factor_coefficient(1) == 0
    assert log_factor_coefficient(2) == -9
    assert log_factor_coefficient(3) == 16
    assert log_factor_coefficient(4) == Fraction(-99, 2)


def test_a3_direct_small_limits():
    assert a3_direct(2).value == pytest.approx(13 / 64, rel=1e-15)
    expected = 13 / 64 * (2 / 3) ** 4 * (22 / 9)
    assert a3_direct(3).value == pytest.approx(expected, rel=1e-15)
    assert a3_direct(4).prime_limit == 3
    with pytest.raises(ValueError):
        a3_direct(1)


def test_a3_direct_invariants():
    values = [a3_direct(y) for y in (5, 11, 100, 1000, 10**4)]
    for v in values:
        assert 0.0 < v.value < 1.0
    for a, b in zip(values, values[1:]):
        assert b.value <= a.value
        assert b.tail_bound < a.tail_bound


def test_a3_direct_tail_bound_is_honest():
    for y in (10, 100, 1000, 10**5):
        v = a3_direct(y)
        assert abs(math.log(v.value) - math.log(A3_REFERENCE)) <= v.tail_bound


def test_a3_accelerated_value_and_bound():
    v = a3_accelerated()
    assert v.tail_bound < 1e-10
    assert abs(v.value - A3_REFERENCE) < 1e-15


def test_a3_accelerated_depth_consistency():
    shallow = a3_accelerated(series_depth=2)
    deep = a3_accelerated(series_depth=12)
    assert abs(math.log(shallow.value) - math.log(deep.value)) <= shallow.tail_bound + deep.tail_bound
    with pytest.raises(ValueError):
        a3_accelerated(series_depth=1)


def test_a3_methods_agree_within_bounds():
    direct = a3_direct(10**6)
    accel = a3_accelerated()
    assert abs(math.log(direct.value) - math.log(accel.value)) <= direct.tail_bound + accel.tail_bound


# --- prime zeta -------------------------------------------------------------


def test_prime_zeta_large_k():
    assert abs(prime_zeta(60) - 2.0**-60) < 2 * 3.0**-60


def test_prime_zeta_two_against_direct_sum():
    y = 10**7
    primes = prime_sieve(y).astype(np.float64)
    partial = math.fsum(primes**-2.0)
    # sum_{p > y} p^-2 <= sum_{n > y} n^-2 <= 1/y
    assert 0.0 <= prime_zeta(2) - partial <= 1.0 / y


def test_prime_zeta_stable_under_precision():
    assert prime_zeta(3, precision=1e-12) == pytest.approx(prime_zeta(3, precision=1e-24), abs=1e-12)
    with pytest.raises(ValueError):
        prime_zeta(1)
