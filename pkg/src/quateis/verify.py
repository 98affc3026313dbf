"""Verification suites behind ``quateis verify``.

Each suite returns a JSON-ready report with at least ``check``, ``cases`` and
``failures``.  A suite passes iff ``failures == 0``.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from .arith import (
    bernoulli,
    kummer_valuation,
    staudt_clausen_denominator,
    valuation,
    verify_divisor_split,
    verify_sigma_twist,
)
from .eisenstein import build_G_star, expand_A
from .hecke import (
    Verdict,
    character_sum,
    coset_rep_check,
    in_p_dual,
    random_integral_hermitian,
    sample_gamma0,
)
from .hermitian import enumerate_psd, scale
from .padic import from_rational, leopoldt_quotient, padic_exp, padic_log

SUITES = ("bernoulli", "divisor", "kummer", "lemma2", "coset", "gstar", "leopoldt", "padic")


def _report(check: str, cases: int, failures: int, **extra) -> dict:
    return {"check": check, **extra, "cases": cases, "failures": failures}


def suite_bernoulli(mmax: int = 200) -> dict:
    """von Staudt-Clausen denominators and the defining recurrence."""
    cases = failures = 0
    for m in range(2, mmax + 1, 2):
        cases += 1
        if bernoulli(m).denominator != staudt_clausen_denominator(m):
            failures += 1
    for m in range(1, mmax + 1):
        cases += 1
        s = sum(math.comb(m + 1, j) * bernoulli(j) for j in range(m + 1))
        if s != 0:
            failures += 1
    return _report("bernoulli", cases, failures, mmax=mmax)


def suite_divisor(nmax: int = 1000, primes=(3, 5, 7), jmax: int = 5, mmax: int = 10) -> dict:
    """Divisor splitting over pN and the sigma twist identity."""
    cases = failures = 0
    for p in primes:
        for N in range(1, nmax + 1):
            for j in range(jmax + 1):
                cases += 1
                if not verify_divisor_split(lambda d, j=j: d**j, N, p):
                    failures += 1
            for m in range(mmax + 1):
                cases += 1
                if not verify_sigma_twist(m, N, p):
                    failures += 1
    return _report("divisor", cases, failures, nmax=nmax, primes=list(primes))


def kummer_level(k: int, k2: int, p: int) -> int:
    """Largest m with (p-1) p^(m-1) dividing k2 - k (0 if p - 1 does not)."""
    d = abs(k2 - k)
    if d % (p - 1):
        return 0
    m = 1
    while d % ((p - 1) * p**m) == 0:
        m += 1
    return m


def kummer_bound(k: int, k2: int, p: int, mode: str = "sharp") -> int:
    """Lower bound for kummer_valuation(k, k2, p).

    ``stated``: m - 1.  ``sharp``: m off the branch k = 0 mod (p - 1), and
    m - 2 - v_p(k) - v_p(k2) on it, where the pole of the p-adic zeta
    function at s = 1 costs precision.
    """
    m = kummer_level(k, k2, p)
    if mode == "stated":
        return m - 1
    if k % (p - 1):
        return m
    return m - 2 - valuation(k, p) - valuation(k2, p)


def suite_kummer(p: int, kmax: int = 200, mode: str = "sharp") -> dict:
    cases = failures = 0
    worst = None
    for k in range(2, kmax + 1, 2):
        for k2 in range(k + 2, kmax + 1, 2):
            if kummer_level(k, k2, p) == 0:
                continue
            cases += 1
            v = kummer_valuation(k, k2, p)
            slack = v - kummer_bound(k, k2, p, mode)
            if slack < 0:
                failures += 1
            worst = slack if worst is None else min(worst, slack)
    return _report("kummer", cases, failures, p=p, kmax=kmax, bound=mode, min_slack=worst)


def suite_lemma2(n: int, p: int, trace_bound: int = 4) -> dict:
    """Character-sum dichotomy against membership in p Her^tau."""
    cases = failures = 0
    if n == 1:
        forms = list(range(0, 2 * p * p + 1))
    else:
        base = enumerate_psd(trace_bound)
        forms = base + [scale(H, p) for H in base]
    for H in forms:
        cases += 1
        try:
            res = character_sum(H, p, n)
        except AssertionError:
            failures += 1
            continue
        if (res.verdict is Verdict.FULL_MASS) != in_p_dual(H, p, n):
            failures += 1
    return _report("lemma2", cases, failures, n=n, p=p)


def suite_coset(n: int, p: int, samples: int = 200, seed: int = 0, max_word: int = 12) -> dict:
    rng = random.Random(seed)
    failures = 0
    for i in range(samples):
        M = sample_gamma0(n, p, seed * 100003 + i, rng.randint(0, max_word))
        T = random_integral_hermitian(rng, n)
        if not coset_rep_check(M, T, p):
            failures += 1
    return _report("coset", samples, failures, n=n, p=p, seed=seed)


def suite_gstar(k: int, p: int, trace_bound: int = 1, lazy: bool | None = None) -> dict:
    """Operator-built G*_k against the closed-form coefficients."""
    if lazy is None:
        lazy = p * p * trace_bound > 9
    G = build_G_star(k, p, trace_bound, lazy=lazy)
    A = expand_A(k, p, trace_bound)
    failures = sum(1 for H, c in A.items() if G[H] != c)
    return _report("gstar", len(A), failures, k=k, p=p, B=trace_bound)


def suite_leopoldt(p: int, m_max: int = 5, N: int = 30) -> dict:
    """v_p(Leopoldt quotient - log_p x) strictly increasing in m."""
    cases = failures = 0
    for x in (1 + p, 2 ** (p - 1)):
        lg = padic_log(from_rational(x, p, N))
        prev = None
        for m in range(1, m_max + 1):
            cases += 1
            v = (leopoldt_quotient(x, p, m, N) - lg).val
            if prev is not None and not v > prev:
                failures += 1
            prev = v
    return _report("leopoldt", cases, failures, p=p, m_max=m_max)


def suite_padic(p: int, samples: int = 100, seed: int = 0, N: int = 20) -> dict:
    """exp(log x) == x and log(xy) == log x + log y at tracked precision."""
    rng = random.Random(seed)
    mod = p**N
    failures = 0
    for _ in range(samples):
        x = from_rational(1 + p * rng.randrange(mod), p, N)
        y = from_rational(Fraction(1 + p * rng.randrange(mod), 1 + p * rng.randrange(1, mod)), p, N)
        back = padic_exp(padic_log(x))
        if not (back - x).val >= min(back.absprec, x.absprec):
            failures += 1
        lhs = padic_log(x * y)
        rhs = padic_log(x) + padic_log(y)
        if not (lhs - rhs).is_zero:
            failures += 1
    return _report("padic", 2 * samples, failures, p=p, seed=seed)


def run_suite(name: str, **params) -> dict:
    fn = {
        "bernoulli": suite_bernoulli,
        "divisor": suite_divisor,
        "kummer": suite_kummer,
        "lemma2": suite_lemma2,
        "coset": suite_coset,
        "gstar": suite_gstar,
        "leopoldt": suite_leopoldt,
        "padic": suite_padic,
    }[name]
    return fn(**params)
