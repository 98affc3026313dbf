import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quateis.arith import (
    INF,
    bernoulli,
    divisors,
    kummer_lhs,
    kummer_valuation,
    seed_bernoulli_cache,
    sigma,
    sigma_star,
    staudt_clausen_denominator,
    valuation,
    verify_divisor_split,
    verify_sigma_twist,
)

from oracles import bernoulli_akiyama_tanigawa, sigma_brute


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)
    assert staudt_clausen_denominator(12) == 2730


def test_bernoulli_matches_akiyama_tanigawa():
    ref = bernoulli_akiyama_tanigawa(80)
    assert [bernoulli(m) for m in range(81)] == ref


@pytest.mark.parametrize("m", range(2, 201, 2))
def test_von_staudt_clausen(m):
    assert bernoulli(m).denominator == staudt_clausen_denominator(m)


def test_bernoulli_recurrence():
    for m in range(1, 60):
        assert sum(math.comb(m + 1, j) * bernoulli(j) for j in range(m + 1)) == 0


def test_bernoulli_concurrent_readers_agree():
    results = [None] * 8

    def work(i):
        results[i] = [bernoulli(m) for m in range(0, 240, 2)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


def test_seed_cache_rejects_bad_values():
    top = max(k for k in range(0, 400, 2) if True)
    bernoulli(top)  # make sure the seeded index would be new only past this
    with pytest.raises(ValueError):
        seed_bernoulli_cache({top + 2: Fraction(1, 7)})


def test_sigma_examples():
    assert sigma(5, 1) == 1
    assert sigma(3, 6) == 252
    assert sigma(1, Fraction(3, 2)) == 0
    assert sigma(4, 0) == 0
    assert sigma(2, -4) == 0


@given(st.integers(0, 6), st.integers(1, 400))
def test_sigma_against_brute_force(k, n):
    assert sigma(k, n) == sigma_brute(k, n)


def test_sigma_star_examples():
    assert sigma_star(1, 6, 3) == 3
    assert sigma_star(4, 9, 3) == 1
    assert sigma_star(3, 10, 3) == sigma(3, 10)
    with pytest.raises(ValueError):
        sigma_star(1, 6, 2)
    with pytest.raises(ValueError):
        sigma_star(1, 6, 9)


@given(st.integers(0, 8), st.integers(1, 2000), st.sampled_from([3, 5, 7, 11]))
def test_sigma_star_closed_form(m, N, p):
    v = valuation(N, p)
    assert sigma_star(m, N, p) == sigma(m, N // p**v)


def test_divisor_split_examples():
    assert verify_divisor_split(lambda d: d, 6, 3)
    assert sum(divisors(18)) == 39
    assert verify_divisor_split(lambda d: 1, 1, 5)
    assert verify_divisor_split(lambda d: d * d, 4, 3)


@given(st.integers(0, 5), st.integers(1, 1000), st.sampled_from([3, 5, 7]))
def test_divisor_split_property(j, N, p):
    assert verify_divisor_split(lambda d: d**j, N, p)


def test_sigma_twist_examples():
    assert 9 * sigma(1, 1) - sigma(1, 9) == -4
    assert verify_sigma_twist(1, 1, 3)
    assert verify_sigma_twist(0, 1, 5)
    assert verify_sigma_twist(3, 10, 3)


@given(st.integers(0, 10), st.integers(1, 1000), st.sampled_from([3, 5, 7]))
def test_sigma_twist_property(m, N, p):
    assert verify_sigma_twist(m, N, p)


def test_kummer_lhs_examples():
    assert kummer_lhs(6, 5) == Fraction(-781, 63)
    assert kummer_lhs(2, 3) == Fraction(-1, 6)
    assert kummer_lhs(4, 3) == Fraction(13, 60)


def test_kummer_valuation_examples():
    assert kummer_lhs(6, 5) - kummer_lhs(10, 5) == Fraction(10245310, 693)
    assert kummer_valuation(6, 10, 5) == 1
    assert kummer_valuation(8, 8, 3) == INF
    # 58 - 4 = 2 * 3^3 but 4 = 0 mod (p - 1): the pole branch loses a digit
    assert kummer_valuation(4, 58, 3) == 2


def test_valuation_of_zero_is_infinite_marker():
    assert valuation(0, 3) is INF
    assert valuation(Fraction(9, 2), 3) == 2
    assert valuation(Fraction(2, 27), 3) == -3
