import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primegaps.series import (
    TripleConfig,
    distinct_residues,
    mertens_product,
    odd_prime_factors,
    singular_series,
    triple_growth_check,
    triple_singular_series,
    twin_prime_constant,
)

from conftest import trial_primes

TRUE_TWIN_CONSTANT = float(mpmath.mp.twinprime)
EULER_GAMMA = 0.5772156649015329


def test_twin_constant_single_factor():
    v = twin_prime_constant(3)
    assert v.value == 0.75
    assert v.error_bound > abs(0.75 - TRUE_TWIN_CONSTANT)


def test_twin_constant_at_default_truncation():
    v = twin_prime_constant(10**6)
    assert abs(v.value - 0.66016) < 5e-6
    lo, hi = v.interval()
    assert lo <= TRUE_TWIN_CONSTANT <= hi
    assert v.error_bound < 1e-6


def test_twin_constant_intervals_nest():
    coarse = twin_prime_constant(10**4)
    fine = twin_prime_constant(10**6)
    c_lo, c_hi = coarse.interval()
    assert c_lo <= fine.value <= c_hi
    assert fine.error_bound < coarse.error_bound


def test_twin_constant_error_monotone():
    bounds = [twin_prime_constant(p).error_bound for p in (11, 101, 10_007, 100_003)]
    assert bounds == sorted(bounds, reverse=True)
    with pytest.raises(ValueError):
        twin_prime_constant(2)


def test_odd_prime_factors():
    assert odd_prime_factors(1) == []
    assert odd_prime_factors(2**10) == []
    assert odd_prime_factors(30030) == [3, 5, 7, 11, 13]
    assert odd_prime_factors(-45) == [3, 5]


def test_singular_series_values():
    c2 = twin_prime_constant().value
    assert singular_series(9).value == 0.0
    assert singular_series(9).error_bound == 0.0
    s2 = singular_series(2)
    assert s2.value == pytest.approx(2 * c2, rel=1e-15)
    assert s2.value > 1.32
    assert singular_series(6).value == pytest.approx(4 * c2, rel=1e-15)
    assert singular_series(12).value == singular_series(6).value
    with pytest.raises(ValueError):
        singular_series(0)


@given(st.integers(min_value=1, max_value=100_000))
@settings(max_examples=80, deadline=None)
def test_singular_series_support_invariance(d):
    # the value depends only on the set of odd prime divisors
    kernel = (2 if d % 2 == 0 else 1) * math.prod(odd_prime_factors(d)) or 1
    if d % 2:
        assert singular_series(d).value == 0.0
    else:
        assert singular_series(d).value == singular_series(kernel).value


@given(st.integers(min_value=1, max_value=50_000))
@settings(max_examples=80, deadline=None)
def test_singular_series_minimum_on_two_powers(d):
    if d % 2:
        return
    base = singular_series(2)
    value = singular_series(d)
    assert value.value >= base.value
    is_two_power = d & (d - 1) == 0
    assert (value.value == base.value) == is_two_power


def test_factor_swap_monotonicity():
    # swapping a prime factor for any smaller missing odd prime raises the value,
    # over every squarefree even d below 2310
    small_primes = trial_primes(2310)
    for d in range(2, 2310, 2):
        support = odd_prime_factors(d)
        if any(d % (p * p) == 0 for p in support) or d % 4 == 0:
            continue
        s_d = singular_series(d).value
        for q in support:
            for p in small_primes:
                if p >= q:
                    break
                if p == 2 or d % p == 0:
                    continue
                swapped = d // q * p
                assert singular_series(swapped).value > s_d


def test_distinct_residues_examples():
    assert distinct_residues({0, 2, 4}, 3) == 3
    assert distinct_residues({0, 2, 6}, 2) == 1
    assert distinct_residues({0, 2310, 30030}, 53) == 3
    with pytest.raises(ValueError):
        distinct_residues({0, 2}, 4)
    with pytest.raises(ValueError):
        distinct_residues(set(), 3)


def test_distinct_residues_three_iff_coprime_delta():
    primes = trial_primes(100)
    for d in range(2, 101, 2):
        for d_prime in range(1, d):
            delta = d_prime * d * (d - d_prime)
            for p in primes:
                nu = distinct_residues({0, d_prime, d}, p)
                # p | delta collapses two offsets into one class; otherwise all three are distinct
                assert (nu == 3) == (delta % p != 0)


def test_triple_config_validation():
    cfg = TripleConfig(6, 2)
    assert cfg.delta == 2 * 6 * 4
    with pytest.raises(ValueError):
        TripleConfig(5, 2)
    with pytest.raises(ValueError):
        TripleConfig(6, 6)
    with pytest.raises(ValueError):
        TripleConfig(6, 0)


def test_triple_series_inadmissible_triples_vanish():
    v = triple_singular_series(TripleConfig(4, 2))
    assert v.value == 0.0 and v.error_bound == 0.0
    v = triple_singular_series(TripleConfig(2, 1))
    assert v.value == 0.0 and v.error_bound == 0.0


def test_triple_series_stability_across_truncations():
    coarse = triple_singular_series(TripleConfig(6, 2), 10**4)
    fine = triple_singular_series(TripleConfig(6, 2), 10**6)
    oracle = triple_singular_series(TripleConfig(6, 2), 10**7)
    assert abs(coarse.value - fine.value) < 1e-4
    assert abs(fine.value - oracle.value) < 1e-6
    # partial products only shrink, and coarser intervals bracket finer values
    assert coarse.value >= fine.value >= oracle.value
    lo, hi = coarse.interval()
    assert lo <= oracle.value <= hi
    assert fine.error_bound < coarse.error_bound


def test_triple_series_truncation_guard():
    with pytest.raises(ValueError):
        triple_singular_series(TripleConfig(30030, 2310), truncation_prime=7)
    auto = triple_singular_series(TripleConfig(30030, 2310))
    assert auto.value > 0


def test_mertens_product_values():
    assert mertens_product(2) == 0.5
    assert mertens_product(3) == pytest.approx(1 / 3, rel=1e-12)
    exact = math.prod(1 - 1.0 / p for p in trial_primes(1000))
    assert mertens_product(1000) == pytest.approx(exact, rel=1e-12)
    asymptote = math.exp(-EULER_GAMMA) / math.log(10**6)
    assert mertens_product(10**6) == pytest.approx(asymptote, rel=0.02)
    with pytest.raises(ValueError):
        mertens_product(1)


def test_growth_check():
    w = triple_growth_check(TripleConfig(6, 2))
    assert w.passes
    assert w.ratio < 0.25
    w = triple_growth_check(TripleConfig(30030, 2310))
    assert w.passes
    w = triple_growth_check(TripleConfig(4, 2))
    assert w.passes and w.series.value == 0.0
    with pytest.raises(ValueError):
        triple_growth_check(TripleConfig(6, 2), epsilon=0.0)


def test_growth_check_reports_epsilon_reference():
    w = triple_growth_check(TripleConfig(6, 2), epsilon=0.5)
    assert w.d_power_epsilon == pytest.approx(math.sqrt(6))
    assert w.to_dict()["epsilon"] == 0.5
