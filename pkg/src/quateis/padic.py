"""Precision-tracked p-adic numbers, log_p and exp_p, and the limit values
behind the transcendental Eisenstein coefficient.

A nonzero :class:`PadicNumber` is ``p**val * unit`` with ``unit`` a p-adic unit
known modulo ``p**prec`` (relative precision).  Zeros carry only an absolute
precision in ``val``; ``val == INF`` marks an exact zero.

For odd p both log (on 1 + pZ_p) and exp (on pZ_p) are isometries, so they
preserve absolute precision; series are truncated once every dropped term is
already zero modulo that precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INF, bernoulli, require_odd_prime, valuation

__all__ = [
    "PadicDomainError",
    "PadicNumber",
    "PadicSeriesBudget",
    "from_rational",
    "padic_log",
    "padic_exp",
    "log_budget",
    "exp_budget",
    "leopoldt_quotient",
    "log_two_power",
    "tilde_a_value",
    "tilde_a_limit",
    "bernoulli_residue_check",
    "MAX_BERNOULLI_INDEX",
]

# Bernoulli indices above this are refused by the limit checks.
MAX_BERNOULLI_INDEX = 600


class PadicDomainError(ValueError):
    pass


def _vp_int(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


@dataclass(frozen=True)
class PadicNumber:
    p: int
    val: int | float
    unit: int
    prec: int

    @classmethod
    def zero(cls, p: int, absprec: int | float = INF) -> "PadicNumber":
        return cls(p, absprec, 0, 0)

    @classmethod
    def _normalize(cls, p: int, v: int, x: int, absprec: int | float) -> "PadicNumber":
        """Build from the integer ``x * p**v`` known modulo ``p**absprec``."""
        if absprec == INF:
            raise ValueError("normalization needs a finite precision")
        rel = absprec - v
        if rel <= 0:
            return cls.zero(p, absprec)
        x %= p**rel
        if x == 0:
            return cls.zero(p, absprec)
        k, x = _vp_int(x, p)
        return cls(p, v + k, x % p ** (rel - k), rel - k)

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def valuation(self) -> int | float:
        return self.val

    @property
    def absprec(self) -> int | float:
        return self.val + self.prec

    def _check(self, other) -> "PadicNumber":
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            if r == 0:
                return PadicNumber.zero(self.p)
            if self.absprec == INF:
                raise ValueError("cannot coerce a rational against an exact zero")
            # enough digits for both relative (mul/div) and absolute (add) use
            need = max(self.prec, self.absprec - valuation(r, self.p), 1)
            return from_rational(r, self.p, need)
        if other.p != self.p:
            raise ValueError("mixing different primes")
        return other

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.val, (-self.unit) % self.p**self.prec, self.prec)

    def __add__(self, other):
        other = self._check(other)
        if self.is_zero and self.val == INF:
            return other
        if other.is_zero and other.val == INF:
            return self
        absprec = min(self.absprec, other.absprec)
        v = min(self.val, other.val)
        if v >= absprec:
            return PadicNumber.zero(self.p, absprec)
        p = self.p
        x = 0
        for a in (self, other):
            if not a.is_zero:
                x += a.unit * p ** (a.val - v)
        return PadicNumber._normalize(p, v, x, absprec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        if self.is_zero or other.is_zero:
            if (self.is_zero and self.val == INF) or (other.is_zero and other.val == INF):
                return PadicNumber.zero(p)
            if self.is_zero and other.is_zero:
                return PadicNumber.zero(p, self.val + other.val)
            z, nz = (self, other) if self.is_zero else (other, self)
            return PadicNumber.zero(p, z.val + nz.val)
        prec = min(self.prec, other.prec)
        return PadicNumber(p, self.val + other.val, (self.unit * other.unit) % p**prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("p-adic division by zero")
        p = self.p
        if self.is_zero:
            return PadicNumber.zero(p, self.val - other.val)
        prec = min(self.prec, other.prec)
        mod = p**prec
        return PadicNumber(p, self.val - other.val, (self.unit * pow(other.unit, -1, mod)) % mod, prec)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def lift(self) -> Fraction:
        """A rational representative: p**val * unit."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** self.val * self.unit

    def digits(self) -> list[int]:
        """Base-p digits of the unit, least significant first."""
        out, x = [], self.unit
        for _ in range(self.prec):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def __str__(self):
        p = self.p
        if self.is_zero:
            return "0" if self.val == INF else f"0 mod {p}^{self.val}"
        return f"{p}^{self.val} * {self.unit} mod {p}^{self.absprec}"

    def digit_string(self) -> str:
        """Digit expansion, most significant first, with the p-adic point."""
        if self.is_zero:
            return str(self)
        ds = "".join(str(d) if d < 10 else f"({d})" for d in reversed(self.digits()))
        return f"...{ds} x {self.p}^{self.val}"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "val": None if self.val == INF else self.val,
            "unit": str(self.unit),
            "prec": self.prec,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PadicNumber":
        val = INF if obj["val"] is None else int(obj["val"])
        return cls(int(obj["p"]), val, int(obj["unit"]), int(obj["prec"]))


def from_rational(r, p: int, N: int) -> PadicNumber:
    """Embed a rational into Q_p with relative precision N."""
    require_odd_prime(p)
    if N < 1:
        raise ValueError("precision must be positive")
    r = Fraction(r)
    if r == 0:
        return PadicNumber.zero(p)
    v = valuation(r, p)
    num, den = r.numerator, r.denominator
    if v > 0:
        num //= p**v
    elif v < 0:
        den //= p ** (-v)
    mod = p**N
    return PadicNumber(p, v, (num * pow(den, -1, mod)) % mod, N)


@dataclass(frozen=True)
class PadicSeriesBudget:
    """Target absolute precision and the number of series terms kept."""

    target: int
    cutoff: int


def _floor_log(n: int, p: int) -> int:
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def log_budget(p: int, v: int, target: int) -> PadicSeriesBudget:
    # term n has valuation n v - v_p(n) >= n v - floor(log_p n), nondecreasing
    n = 1
    while n * v - _floor_log(n, p) < target:
        n += 1
    return PadicSeriesBudget(target, n - 1)


def exp_budget(p: int, v: int, target: int) -> PadicSeriesBudget:
    # v_p(n!) <= (n - 1)/(p - 1), so term n has valuation >= n v - (n - 1)/(p - 1)
    n = 1
    while n * v * (p - 1) - (n - 1) < target * (p - 1):
        n += 1
    return PadicSeriesBudget(target, n - 1)


def padic_log(x: PadicNumber) -> PadicNumber:
    """log_p(x) = sum_{n>=1} (-1)^(n+1) (x - 1)^n / n  for x = 1 mod p."""
    p = x.p
    y = x - 1
    if y.val < 1:
        raise PadicDomainError("log_p needs x = 1 mod p")
    if y.is_zero:
        return PadicNumber.zero(p, y.val)
    target = y.absprec
    a, u = y.val, y.unit
    budget = log_budget(p, a, target)
    mod = p**target
    total = 0
    upow = 1
    for n in range(1, budget.cutoff + 1):
        upow = (upow * u) % mod
        vn, rest = _vp_int(n, p)
        e = n * a - vn
        if e >= target:
            continue
        term = p**e * upow * pow(rest, -1, mod)
        total += term if n % 2 else -term
    return PadicNumber._normalize(p, 0, total, target)


def padic_exp(x: PadicNumber) -> PadicNumber:
    """exp_p(x) = sum x^n / n!  for v_p(x) >= 1."""
    p = x.p
    if x.val < 1:
        raise PadicDomainError("exp_p needs v_p(x) >= 1")
    if x.is_zero:
        if x.val == INF:
            raise PadicDomainError("exp_p of an exact zero needs a precision-tagged zero")
        return PadicNumber._normalize(p, 0, 1, x.val)
    target = x.absprec
    a, u = x.val, x.unit
    budget = exp_budget(p, a, target)
    mod = p**target
    total = 1
    upow = 1
    fact_v, fact_rest = 0, 1
    for n in range(1, budget.cutoff + 1):
        upow = (upow * u) % mod
        vn, rest = _vp_int(n, p)
        fact_v += vn
        fact_rest = (fact_rest * rest) % mod
        e = n * a - fact_v
        if e >= target:
            continue
        total += p**e * upow * pow(fact_rest, -1, mod)
    return PadicNumber._normalize(p, 0, total, target)


def leopoldt_quotient(x: int, p: int, m: int, N: int) -> PadicNumber:
    """(x^(p^m) - 1) / p^m embedded with relative precision N."""
    require_odd_prime(p)
    if (x - 1) % p:
        raise PadicDomainError("Leopoldt quotient needs x = 1 mod p")
    return from_rational(Fraction(x ** (p**m) - 1, p**m), p, N)


def log_two_power(p: int, N: int) -> PadicNumber:
    """log_p(2^(p-1)) with relative precision at least N."""
    x = 2 ** (p - 1)
    extra = valuation(x - 1, p)
    # the log keeps absolute precision; ask for enough to leave N relative digits
    while True:
        lg = padic_log(from_rational(x, p, N + extra + 1))
        if lg.prec >= N:
            return lg
        extra += 1


def tilde_a_value(p: int, N: int) -> PadicNumber:
    """The closed form -48p / log_p(2^(p-1)), relative precision N."""
    require_odd_prime(p)
    lg = log_two_power(p, N)
    return from_rational(-48 * p, p, N) / lg


def tilde_a_limit(p: int, N: int) -> PadicNumber:
    """Actual p-adic limit of a_{k_m}(H) for k_m = 2 + (p-1)p^(m-1) at 2det(H) = 1.

    Equals 48p / ((p - 1) log_p(2^(p-1))): the weight quotient k/B_k tends to
    12 / (1 - p), not 12, because of the Euler factor at k = 2.
    """
    require_odd_prime(p)
    lg = log_two_power(p, N)
    return from_rational(Fraction(48 * p, p - 1), p, N) / lg


def bernoulli_residue_check(p: int, m: int) -> int | float:
    """v_p(B_{(p-1)p^(m-1)} - (p-1)/p)."""
    require_odd_prime(p)
    if m < 1:
        raise ValueError("m must be >= 1")
    idx = (p - 1) * p ** (m - 1)
    if idx > MAX_BERNOULLI_INDEX:
        raise ValueError(f"Bernoulli index {idx} exceeds {MAX_BERNOULLI_INDEX}")
    return valuation(bernoulli(idx) - Fraction(p - 1, p), p)
