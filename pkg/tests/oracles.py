"""Independent reference computations used only by the tests."""
from fractions import Fraction


def bernoulli_akiyama_tanigawa(n):
    """B_0..B_n via Akiyama-Tanigawa, converted to the B_1 = -1/2 convention."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return out


def sigma_brute(k, m):
    m = Fraction(m)
    if m.denominator != 1 or m <= 0:
        return 0
    n = m.numerator
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def vp(x, p):
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v, a, b = 0, x.numerator, x.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def log1p_partial(a, terms):
    """Exact rational partial sum of log(1 + a)."""
    return sum(Fraction((-1) ** (n + 1)) * Fraction(a) ** n / n for n in range(1, terms + 1))
