"""Hermitian 2x2 forms over the dual of the Hurwitz order.

``HermitianForm(n, m, h)`` is the matrix ``[[n, h], [conj(h), m]]`` with
integer diagonal and ``h`` in the trace dual of O.  The trace pairing with an
integral form ``T = [[s, t], [conj(t), u]]`` is

    tau(H, T) = Re tr(H T) = n s + m u + 2 Re(h conj(t)),

which is integral exactly when ``h`` is in the dual of O.  Forms are ordered
canonically by ``(n + m, n, doubled coordinates of h)``.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Iterator

from .quaternion import (
    ZERO,
    HurwitzQuaternion,
    LatticeError,
    from_order_coords,
    in_dual,
    in_hurwitz,
    parse_quaternion,
    q_norm2,
)

__all__ = [
    "HermitianForm",
    "IntegralHermitian",
    "H0",
    "O2",
    "diag",
    "two_det",
    "epsilon",
    "rank",
    "is_psd",
    "tau_pair",
    "scale",
    "divide_exact",
    "enumerate_psd",
    "enumerate_quotient",
    "quotient_size",
    "parse_form",
    "form_to_json",
    "form_from_json",
]


@dataclass(frozen=True, slots=True)
class HermitianForm:
    n: int
    m: int
    h: HurwitzQuaternion = ZERO

    def __post_init__(self):
        if not in_dual(self.h):
            raise LatticeError(f"off-diagonal entry {self.h} is not in the dual of O")

    @property
    def trace(self) -> int:
        return self.n + self.m

    def sort_key(self):
        return (self.n + self.m, self.n, self.h.c)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{self.n},{self.m},{self.h}"


@dataclass(frozen=True, slots=True)
class IntegralHermitian:
    """Element of Her_2(O): diagonal s, u and off-diagonal t in O."""

    s: int
    u: int
    t: HurwitzQuaternion = ZERO

    def __post_init__(self):
        if not in_hurwitz(self.t):
            raise LatticeError(f"{self.t} is not in the Hurwitz order")


O2 = HermitianForm(0, 0)
H0 = HermitianForm(1, 1, HurwitzQuaternion((1, 1, 0, 0)))


def diag(n: int, m: int) -> HermitianForm:
    return HermitianForm(n, m)


def two_det(H: HermitianForm) -> int:
    """2 det(H) = 2 (n m - N(h)), always an integer on the dual lattice."""
    val = 2 * (H.n * H.m - q_norm2(H.h))
    assert val.denominator == 1
    return val.numerator


def is_psd(H: HermitianForm) -> bool:
    return H.n >= 0 and H.m >= 0 and two_det(H) >= 0


def _divides_form(H: HermitianForm, d: int) -> bool:
    if H.n % d or H.m % d or any(x % d for x in H.h.c):
        return False
    return sum(x // d for x in H.h.c) % 2 == 0


def epsilon(H: HermitianForm) -> int:
    """Largest d >= 1 with H/d still in the dual lattice."""
    g = math.gcd(H.n, H.m, *H.h.c)
    if g == 0:
        raise ValueError("epsilon is undefined for the zero form")
    best = 1
    d = 1
    while d * d <= g:
        if g % d == 0:
            for cand in (d, g // d):
                if cand > best and _divides_form(H, cand):
                    best = cand
        d += 1
    return best


def rank(H: HermitianForm) -> int:
    if not is_psd(H):
        raise ValueError(f"{H} is not positive semidefinite")
    if H == O2:
        return 0
    return 1 if two_det(H) == 0 else 2


def tau_pair(H: HermitianForm, T: IntegralHermitian) -> int:
    twice = 2 * (H.n * T.s + H.m * T.u) + sum(x * y for x, y in zip(H.h.c, T.t.c))
    # twice == 2 tau(H, T)
    if twice % 2:
        raise ArithmeticError(f"tau({H}, {T}) is not integral")
    return twice // 2


def scale(H: HermitianForm, d: int) -> HermitianForm:
    return HermitianForm(d * H.n, d * H.m, HurwitzQuaternion(tuple(d * x for x in H.h.c)))


def divide_exact(H: HermitianForm, d: int) -> HermitianForm:
    if d < 1 or not _divides_form(H, d):
        raise LatticeError(f"{H} / {d} leaves the dual lattice")
    return HermitianForm(H.n // d, H.m // d, HurwitzQuaternion(tuple(x // d for x in H.h.c)))


def _dual_points(limit: int) -> Iterator[tuple[int, int, int, int]]:
    """Doubled coordinates c with sum(c) even and sum(c_i^2) <= limit, lex order."""
    r = math.isqrt(limit)
    for c1 in range(-r, r + 1):
        l1 = limit - c1 * c1
        r2 = math.isqrt(l1)
        for c2 in range(-r2, r2 + 1):
            l2 = l1 - c2 * c2
            r3 = math.isqrt(l2)
            for c3 in range(-r3, r3 + 1):
                l3 = l2 - c3 * c3
                r4 = math.isqrt(l3)
                start = -r4
                if (c1 + c2 + c3 + start) % 2:
                    start += 1
                for c4 in range(start, r4 + 1, 2):
                    yield (c1, c2, c3, c4)


def forms_with_diagonal(n: int, m: int) -> Iterator[HermitianForm]:
    """PSD forms with the given diagonal, in canonical order."""
    # N(h) <= n m  <=>  sum(c^2) <= 4 n m
    for c in _dual_points(4 * n * m):
        yield HermitianForm(n, m, HurwitzQuaternion(c))


def enumerate_psd(trace_bound: int) -> list[HermitianForm]:
    """All PSD forms with n + m <= trace_bound, canonically ordered."""
    if trace_bound < 0:
        raise ValueError("trace bound must be nonnegative")
    out = []
    for tr in range(trace_bound + 1):
        for n in range(tr + 1):
            out.extend(forms_with_diagonal(n, tr - n))
    return out


def quotient_size(n_deg: int, p: int) -> int:
    return p ** (n_deg + 2 * n_deg * (n_deg - 1))


def enumerate_quotient(n_deg: int, p: int) -> Iterator:
    """Representatives of Her_n(O) / p Her_n(O).

    Degree 1 yields the integers 0 .. p-1; degree 2 yields IntegralHermitian
    forms with diagonal in [0, p) and off-diagonal running over O / pO in the
    (e1, e2, e3, omega) basis.
    """
    if n_deg == 1:
        yield from range(p)
        return
    if n_deg != 2:
        raise ValueError("only degrees 1 and 2 are supported")
    ts = [from_order_coords(x) for x in itertools.product(range(p), repeat=4)]
    for s in range(p):
        for u in range(p):
            for t in ts:
                yield IntegralHermitian(s, u, t)


_FORM = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(\[.*\])\s*$")


def parse_form(text: str) -> HermitianForm:
    """Parse ``"n,m,[c1,c2,c3,c4]"`` with doubled off-diagonal coordinates."""
    mt = _FORM.match(text)
    if not mt:
        raise ValueError(f"bad form literal {text!r}")
    return HermitianForm(int(mt.group(1)), int(mt.group(2)), parse_quaternion(mt.group(3)))


def form_to_json(H: HermitianForm) -> dict:
    return {"n": H.n, "m": H.m, "h2": list(H.h.c)}


def form_from_json(obj: dict | str) -> HermitianForm:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return HermitianForm(int(obj["n"]), int(obj["m"]), HurwitzQuaternion(tuple(int(x) for x in obj["h2"])))
