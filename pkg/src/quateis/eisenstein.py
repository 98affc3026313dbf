"""Fourier coefficients of degree-2 quaternionic Eisenstein series, the U(p)
operator on truncated q-expansions, and the p-adic limit series.

Coefficient families (all exact rationals):

* ``a_coeff(k, H)``   -- Krieg's formula for E_k, with a_k(0) = 1;
* ``b_coeff(k, H)``   -- the rescaled series G_k = c_k E_k;
* ``A_coeff(k, p, H)`` -- closed form of the level-p limit series G*_k.

``build_G_star`` assembles G*_k from G_k using only U(p) and linear
combinations, so comparing it with ``expand_A`` checks the closed form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, TextIO

from .arith import bernoulli, divisors, require_odd_prime, sigma, sigma_star, valuation
from .hermitian import (
    O2,
    HermitianForm,
    enumerate_psd,
    epsilon,
    form_from_json,
    form_to_json,
    is_psd,
    rank,
    scale,
    two_det,
)
from .padic import MAX_BERNOULLI_INDEX, PadicNumber, from_rational, tilde_a_value

__all__ = [
    "BoundError",
    "WeightSequence",
    "QExpansion",
    "LimitRow",
    "normalization",
    "alpha_star",
    "a_coeff",
    "b_coeff",
    "A_coeff",
    "expand_a",
    "expand_b",
    "expand_A",
    "u_p",
    "build_F",
    "build_G_star",
    "convergence_table",
    "transcendental_table",
    "write_jsonl",
    "read_jsonl",
]


class BoundError(LookupError):
    """Access outside the trace bound of a truncated expansion."""


@dataclass(frozen=True)
class WeightSequence:
    k: int
    p: int
    m: int

    @property
    def weight(self) -> int:
        return self.k + (self.p - 1) * self.p ** (self.m - 1)


def _check_weight(k: int) -> None:
    if k % 2 or k < 4:
        raise ValueError(f"weight must be even and >= 4, got {k}")


@lru_cache(maxsize=None)
def normalization(k: int) -> Fraction:
    """c_k with G_k = c_k E_k; c_k = -(2^(k-2) - 1) B_k B_{k-2} / (4k(k-2))."""
    _check_weight(k)
    return -(2 ** (k - 2) - 1) * bernoulli(k) * bernoulli(k - 2) / (4 * k * (k - 2))


@lru_cache(maxsize=None)
def _alpha_factor(k: int) -> Fraction:
    return Fraction(-4 * k * (k - 2)) / ((2 ** (k - 2) - 1) * bernoulli(k) * bernoulli(k - 2))


def alpha_star(k: int, ell: int) -> Fraction:
    _check_weight(k)
    if ell < 0:
        raise ValueError("alpha* is defined for ell >= 0")
    if ell == 0:
        return Fraction(-2 * k) / bernoulli(k)
    return _alpha_factor(k) * (sigma(k - 3, ell) - 2 ** (k - 2) * sigma(k - 3, Fraction(ell, 4)))


@lru_cache(maxsize=None)
def _a_from_invariants(k: int, eps: int, tdet: int) -> Fraction:
    total = Fraction(0)
    for d in divisors(eps):
        total += d ** (k - 1) * alpha_star(k, tdet // (d * d))
    return total


def a_coeff(k: int, H: HermitianForm) -> Fraction:
    _check_weight(k)
    if not is_psd(H):
        raise ValueError(f"{H} is not positive semidefinite")
    if H == O2:
        return Fraction(1)
    return _a_from_invariants(k, epsilon(H), two_det(H))


def b_coeff(k: int, H: HermitianForm) -> Fraction:
    return normalization(k) * a_coeff(k, H)


@lru_cache(maxsize=None)
def _A_from_invariants(k: int, p: int, r: int, eps: int, tdet: int) -> Fraction:
    if r == 0:
        return (1 - p ** (k - 1)) * (1 - p ** (k - 3)) * normalization(k)
    if r == 1:
        lead = (1 - p ** (k - 3)) * (2 ** (k - 2) - 1) * bernoulli(k - 2) / (2 * (k - 2))
        return lead * sigma_star(k - 1, eps, p)
    total = 0
    for d in divisors(eps):
        if d % p == 0:
            continue
        ell = Fraction(tdet, d * d)
        total += d ** (k - 1) * (sigma_star(k - 3, ell, p) - 2 ** (k - 2) * sigma_star(k - 3, ell / 4, p))
    return Fraction(total)


def A_coeff(k: int, p: int, H: HermitianForm) -> Fraction:
    _check_weight(k)
    require_odd_prime(p)
    r = rank(H)
    if r == 0:
        return _A_from_invariants(k, p, 0, 0, 0)
    return _A_from_invariants(k, p, r, epsilon(H), two_det(H))


class QExpansion:
    """Truncated q-expansion over all PSD forms with trace <= ``trace_bound``.

    Backed either by a dict (dense) or by a coefficient function (lazy).  Lazy
    expansions have the same key set; they only defer evaluation, which lets
    U(p) read a handful of coefficients from very large bounds.
    """

    def __init__(self, trace_bound: int, coeffs: dict | None = None,
                 func: Callable[[HermitianForm], Fraction] | None = None):
        if trace_bound < 0:
            raise BoundError("trace bound must be nonnegative")
        if (coeffs is None) == (func is None):
            raise ValueError("give exactly one of coeffs / func")
        self.trace_bound = trace_bound
        self._coeffs = coeffs
        self._func = func

    @classmethod
    def from_function(cls, trace_bound: int, func, lazy: bool = False) -> "QExpansion":
        if lazy:
            return cls(trace_bound, func=func)
        return cls(trace_bound, coeffs={H: Fraction(func(H)) for H in enumerate_psd(trace_bound)})

    @property
    def is_lazy(self) -> bool:
        return self._func is not None

    def __contains__(self, H: HermitianForm) -> bool:
        return H.trace <= self.trace_bound and is_psd(H)

    def __getitem__(self, H: HermitianForm) -> Fraction:
        if H not in self:
            raise BoundError(f"{H} lies outside trace bound {self.trace_bound}")
        if self._coeffs is not None:
            return self._coeffs[H]
        return self._func(H)

    def keys(self) -> list[HermitianForm]:
        if self._coeffs is not None:
            return sorted(self._coeffs, key=HermitianForm.sort_key)
        return enumerate_psd(self.trace_bound)

    def items(self) -> Iterator[tuple[HermitianForm, Fraction]]:
        for H in self.keys():
            yield H, self[H]

    def __len__(self):
        return len(self._coeffs) if self._coeffs is not None else len(enumerate_psd(self.trace_bound))

    def materialize(self) -> "QExpansion":
        if self._coeffs is not None:
            return self
        return QExpansion(self.trace_bound, coeffs=dict(self.items()))

    def restrict(self, trace_bound: int) -> "QExpansion":
        if trace_bound > self.trace_bound:
            raise BoundError(f"cannot extend bound {self.trace_bound} to {trace_bound}")
        if self._coeffs is None:
            return QExpansion(trace_bound, func=self._func)
        return QExpansion(trace_bound, coeffs={H: c for H, c in self._coeffs.items() if H.trace <= trace_bound})

    def _combine(self, other: "QExpansion", op) -> "QExpansion":
        if self.trace_bound != other.trace_bound:
            raise BoundError("expansions have different trace bounds")
        if self.is_lazy or other.is_lazy:
            return QExpansion(self.trace_bound, func=lambda H: op(self[H], other[H]))
        return QExpansion(self.trace_bound, coeffs={H: op(c, other[H]) for H, c in self._coeffs.items()})

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if self.is_lazy:
            return QExpansion(self.trace_bound, func=lambda H: scalar * self[H])
        return QExpansion(self.trace_bound, coeffs={H: scalar * c for H, c in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, QExpansion) or self.trace_bound != other.trace_bound:
            return NotImplemented if not isinstance(other, QExpansion) else False
        return all(c == other[H] for H, c in self.items())

    def __repr__(self):
        kind = "lazy" if self.is_lazy else f"{len(self._coeffs)} keys"
        return f"QExpansion(trace_bound={self.trace_bound}, {kind})"


def expand_a(k: int, trace_bound: int, lazy: bool = False) -> QExpansion:
    return QExpansion.from_function(trace_bound, lambda H: a_coeff(k, H), lazy)


def expand_b(k: int, trace_bound: int, lazy: bool = False) -> QExpansion:
    return QExpansion.from_function(trace_bound, lambda H: b_coeff(k, H), lazy)


def expand_A(k: int, p: int, trace_bound: int, lazy: bool = False) -> QExpansion:
    return QExpansion.from_function(trace_bound, lambda H: A_coeff(k, p, H), lazy)


def u_p(F: QExpansion, p: int) -> QExpansion:
    """F | U(p): the coefficient at H is F's coefficient at pH."""
    if p < 2:
        raise ValueError("U(p) needs a prime p")
    out = F.trace_bound // p
    pull = lambda H: F[scale(H, p)]  # noqa: E731
    return QExpansion.from_function(out, pull, lazy=F.is_lazy)


def build_F(k: int, p: int, trace_bound: int, lazy: bool = False) -> QExpansion:
    """F_k = G_k | U(p) - p^(k-1) G_k, from G_k expanded at p * trace_bound."""
    require_odd_prime(p)
    G = expand_b(k, p * trace_bound, lazy)
    return u_p(G, p) - p ** (k - 1) * G.restrict(trace_bound)


def build_G_star(k: int, p: int, trace_bound: int, lazy: bool = False) -> QExpansion:
    """G*_k = -(p^(2(k-3)) F_k - F_k | U(p)) / (1 + p^(k-3)).

    G_k is expanded at p^2 * trace_bound.  With ``lazy`` the intermediate
    expansions are evaluated on demand; the result is always dense.
    """
    _check_weight(k)
    F = build_F(k, p, p * trace_bound, lazy)
    combo = p ** (2 * (k - 3)) * F.restrict(trace_bound) - u_p(F, p)
    return (Fraction(-1, 1 + p ** (k - 3)) * combo).materialize()


@dataclass(frozen=True)
class LimitRow:
    m: int
    weight: int
    valuation: int | float
    # True when the difference vanished to the working precision; valuation
    # is then only a lower bound
    capped: bool = False


def _check_feasible(weight: int) -> None:
    if weight > MAX_BERNOULLI_INDEX:
        raise ValueError(f"weight {weight} exceeds the Bernoulli index cap {MAX_BERNOULLI_INDEX}")


def convergence_table(k: int, p: int, H: HermitianForm, m_max: int) -> list[LimitRow]:
    """v_p(b_{k_m}(H) - A_k(H)) along k_m = k + (p-1)p^(m-1)."""
    _check_weight(k)
    require_odd_prime(p)
    target = A_coeff(k, p, H)
    rows = []
    for m in range(1, m_max + 1):
        w = WeightSequence(k, p, m).weight
        _check_feasible(w)
        rows.append(LimitRow(m, w, valuation(b_coeff(w, H) - target, p)))
    return rows


def transcendental_table(p: int, H: HermitianForm, m_max: int, N: int,
                         target: PadicNumber | None = None) -> list[LimitRow]:
    """v_p(a_{k_m}(H) - target) along k_m = 2 + (p-1)p^(m-1).

    ``target`` defaults to the closed form -48p / log_p(2^(p-1)).
    """
    require_odd_prime(p)
    if rank(H) != 2 or epsilon(H) != 1 or two_det(H) != 1:
        raise ValueError("H must have rank 2, epsilon 1 and 2det 1")
    if target is None:
        target = tilde_a_value(p, N)
    rows = []
    for m in range(1, m_max + 1):
        w = WeightSequence(2, p, m).weight
        _check_feasible(w)
        a = a_coeff(w, H)
        v = valuation(a, p)
        diff = from_rational(a, p, max(N, target.absprec - v + 1)) - target
        rows.append(LimitRow(m, w, diff.val, capped=diff.is_zero))
    return rows


def write_jsonl(F: QExpansion, fh: TextIO) -> None:
    for H, c in F.items():
        rec = {"H": form_to_json(H), "num": str(c.numerator), "den": str(c.denominator)}
        fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def read_jsonl(lines: Iterable[str], trace_bound: int | None = None) -> QExpansion:
    coeffs = {}
    for line in lines:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        coeffs[form_from_json(rec["H"])] = Fraction(int(rec["num"]), int(rec["den"]))
    bound = max((H.trace for H in coeffs), default=0) if trace_bound is None else trace_bound
    F = QExpansion(bound, coeffs=coeffs)
    if set(coeffs) != set(enumerate_psd(bound)):
        raise BoundError("file does not cover the full key set of its trace bound")
    return F
