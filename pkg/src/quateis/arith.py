"""Exact rational arithmetic helpers: Bernoulli numbers, divisor sums and
p-adic valuations of rationals.

Rationals are plain :class:`fractions.Fraction` objects throughout the
package.  A valuation of zero is reported as ``math.inf`` so it can never be
mistaken for a finite valuation.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Iterator

__all__ = [
    "INF",
    "bernoulli",
    "bernoulli_table",
    "seed_bernoulli_cache",
    "is_prime",
    "require_odd_prime",
    "divisors",
    "valuation",
    "sigma",
    "sigma_star",
    "verify_divisor_split",
    "verify_sigma_twist",
    "kummer_lhs",
    "kummer_valuation",
    "staudt_clausen_denominator",
]

INF = math.inf

_bern_lock = threading.Lock()
# B_0, B_2, B_4, ... (even indices only)
_bern_even: list[Fraction] = [Fraction(1)]


def _extend_even(upto: int) -> None:
    """Grow the even-index cache so that it holds B_0 .. B_{2*upto}."""
    with _bern_lock:
        cache = _bern_even
        for half in range(len(cache), upto + 1):
            n = 2 * half
            # sum_{j=0}^{n} C(n+1, j) B_j = 0 with B_1 = -1/2 and odd B_j = 0
            s = Fraction(-(n + 1), 2)
            for j in range(half):
                s += math.comb(n + 1, 2 * j) * cache[j]
            cache.append(-s / (n + 1))


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m with the convention B_1 = -1/2."""
    if m < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if m == 1:
        return Fraction(-1, 2)
    if m % 2:
        return Fraction(0)
    half = m // 2
    if half >= len(_bern_even):
        _extend_even(half)
    return _bern_even[half]


def bernoulli_table() -> dict[int, Fraction]:
    """Snapshot of the even-index cache as ``{index: B_index}``."""
    with _bern_lock:
        return {2 * i: b for i, b in enumerate(_bern_even)}


def seed_bernoulli_cache(table: dict[int, Fraction]) -> None:
    """Install precomputed even Bernoulli numbers (e.g. loaded from disk).

    Only a contiguous prefix starting at index 0 is accepted, and every entry
    is checked against the recurrence before it is trusted.
    """
    with _bern_lock:
        have = len(_bern_even)
    want = []
    i = have
    while 2 * i in table:
        want.append(Fraction(table[2 * i]))
        i += 1
    for offset, value in enumerate(want):
        half = have + offset
        n = 2 * half
        with _bern_lock:
            s = Fraction(-(n + 1), 2)
            for j in range(half):
                s += math.comb(n + 1, 2 * j) * _bern_even[j]
            if s + (n + 1) * value != 0:
                raise ValueError(f"cached B_{n} fails the recurrence")
            _bern_even.append(value)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_odd_prime(p: int) -> None:
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise ValueError(f"expected an odd prime, got {p!r}")


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of a positive integer."""
    if n < 1:
        raise ValueError("divisors() needs a positive integer")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def valuation(x: int | Fraction, p: int) -> int | float:
    """p-adic valuation of an integer or rational; ``INF`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _as_positive_int(m) -> int | None:
    m = Fraction(m)
    if m.denominator != 1 or m <= 0:
        return None
    return m.numerator


def sigma(k: int, m: int | Fraction) -> int:
    """Divisor power sum; zero whenever ``m`` is not a positive integer."""
    n = _as_positive_int(m)
    if n is None:
        return 0
    return sum(d**k for d in divisors(n))


def sigma_star(m: int, N: int, p: int) -> int:
    """Sum of d**m over divisors d of N prime to p."""
    require_odd_prime(p)
    n = _as_positive_int(N)
    if n is None:
        return 0
    return sum(d**m for d in divisors(n) if d % p)


def verify_divisor_split(f: Callable[[int], int], N: int, p: int) -> bool:
    """Check  sum_{d|pN} f(d) = sum_{d|N, p!|d} f(d) + sum_{d|N} f(pd)."""
    lhs = sum(f(d) for d in divisors(p * N))
    rhs = sum(f(d) for d in divisors(N) if d % p) + sum(f(p * d) for d in divisors(N))
    return lhs == rhs


def verify_sigma_twist(m: int, N: int, p: int) -> bool:
    """Check  p^(2m) sigma_m(N) - sigma_m(p^2 N) = -(1 + p^m) sigma*_m(N)."""
    lhs = p ** (2 * m) * sigma(m, N) - sigma(m, p * p * N)
    return lhs == -(1 + p**m) * sigma_star(m, N, p)


def kummer_lhs(k: int, p: int) -> Fraction:
    """Euler-factor corrected Bernoulli quotient (1 - p^(k-1)) B_k / k."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    return (1 - p ** (k - 1)) * bernoulli(k) / k


def kummer_valuation(k: int, k2: int, p: int) -> int | float:
    """v_p of kummer_lhs(k) - kummer_lhs(k2); ``INF`` if they coincide."""
    return valuation(kummer_lhs(k, p) - kummer_lhs(k2, p), p)


def _primes_up_to(n: int) -> Iterator[int]:
    return (q for q in range(2, n + 1) if is_prime(q))


def staudt_clausen_denominator(m: int) -> int:
    """prod of primes q with (q - 1) | m, for even m >= 2."""
    return math.prod(q for q in _primes_up_to(m + 1) if m % (q - 1) == 0)
