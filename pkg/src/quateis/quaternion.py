"""Half-integral Hamilton quaternions, the Hurwitz order and its trace dual.

A quaternion ``q = (c1 e1 + c2 e2 + c3 e3 + c4 e4) / 2`` is stored through its
doubled integer coordinates ``(c1, c2, c3, c4)``.  With this scaling

* ``q`` lies in the Hurwitz order O iff the ci are all even or all odd;
* ``q`` lies in the trace dual of O iff ``c1 + c2 + c3 + c4`` is even.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "LatticeError",
    "HurwitzQuaternion",
    "ZERO",
    "ONE",
    "E1",
    "E2",
    "E3",
    "E4",
    "OMEGA",
    "ORDER_BASIS",
    "HURWITZ_UNITS",
    "mul4",
    "q_add",
    "q_sub",
    "q_mul",
    "q_conj",
    "q_norm2",
    "in_hurwitz",
    "in_dual",
    "in_p_order",
    "dual_pairing_oracle",
    "q_mod",
    "from_order_coords",
    "parse_quaternion",
]


class LatticeError(ArithmeticError):
    """An exact result left the lattice the caller asked for."""


@dataclass(frozen=True, slots=True, order=True)
class HurwitzQuaternion:
    c: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.c) != 4:
            raise ValueError("a quaternion needs exactly four coordinates")

    @classmethod
    def from_ints(cls, a1=0, a2=0, a3=0, a4=0) -> "HurwitzQuaternion":
        """Quaternion a1 e1 + a2 e2 + a3 e3 + a4 e4 with integer a_i."""
        return cls((2 * a1, 2 * a2, 2 * a3, 2 * a4))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, 2) for x in self.c)

    def __add__(self, other):
        return q_add(self, other)

    def __sub__(self, other):
        return q_sub(self, other)

    def __neg__(self):
        return HurwitzQuaternion(tuple(-x for x in self.c))

    def __mul__(self, other):
        if isinstance(other, int):
            return HurwitzQuaternion(tuple(other * x for x in self.c))
        return q_mul(self, other)

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.c)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.c) + "]"


def _ham(a, b):
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    # e2 e3 = e4, e3 e4 = e2, e4 e2 = e3
    return (
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
    )


def mul4(a: HurwitzQuaternion, b: HurwitzQuaternion) -> tuple[int, int, int, int]:
    """Integer coordinates of 4ab (never leaves the integers)."""
    return _ham(a.c, b.c)


def q_add(a: HurwitzQuaternion, b: HurwitzQuaternion) -> HurwitzQuaternion:
    return HurwitzQuaternion(tuple(x + y for x, y in zip(a.c, b.c)))


def q_sub(a: HurwitzQuaternion, b: HurwitzQuaternion) -> HurwitzQuaternion:
    return HurwitzQuaternion(tuple(x - y for x, y in zip(a.c, b.c)))


def q_mul(a: HurwitzQuaternion, b: HurwitzQuaternion) -> HurwitzQuaternion:
    """Product ab; raises LatticeError if it is not half-integral."""
    prod = _ham(a.c, b.c)
    if any(x % 2 for x in prod):
        raise LatticeError(f"product {a} * {b} leaves (1/2)Z^4")
    return HurwitzQuaternion(tuple(x // 2 for x in prod))


def q_conj(a: HurwitzQuaternion) -> HurwitzQuaternion:
    c1, c2, c3, c4 = a.c
    return HurwitzQuaternion((c1, -c2, -c3, -c4))


def q_norm2(a: HurwitzQuaternion) -> Fraction:
    """Reduced norm a * conj(a)."""
    return Fraction(sum(x * x for x in a.c), 4)


def in_hurwitz(a: HurwitzQuaternion) -> bool:
    parities = {x % 2 for x in a.c}
    return len(parities) == 1


def in_dual(a: HurwitzQuaternion) -> bool:
    return sum(a.c) % 2 == 0


def in_p_order(a: HurwitzQuaternion, p: int) -> bool:
    """Membership in p*O."""
    if any(x % p for x in a.c):
        return False
    return in_hurwitz(HurwitzQuaternion(tuple(x // p for x in a.c)))


ZERO = HurwitzQuaternion((0, 0, 0, 0))
E1 = ONE = HurwitzQuaternion((2, 0, 0, 0))
E2 = HurwitzQuaternion((0, 2, 0, 0))
E3 = HurwitzQuaternion((0, 0, 2, 0))
E4 = HurwitzQuaternion((0, 0, 0, 2))
OMEGA = HurwitzQuaternion((1, 1, 1, 1))
ORDER_BASIS = (E1, E2, E3, OMEGA)


def _units():
    out = []
    for i in range(4):
        for s in (2, -2):
            c = [0, 0, 0, 0]
            c[i] = s
            out.append(HurwitzQuaternion(tuple(c)))
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                for s4 in (1, -1):
                    out.append(HurwitzQuaternion((s1, s2, s3, s4)))
    return tuple(out)


HURWITZ_UNITS = _units()


def dual_pairing_oracle(a: HurwitzQuaternion) -> bool:
    """True iff 2 Re(a conj(t)) is an integer for every t in the O-basis."""
    for t in ORDER_BASIS:
        # 4 * 2 Re(a conj t) = 2 * sum(a.c * t.c)
        twice_re = Fraction(2 * sum(x * y for x, y in zip(a.c, t.c)), 4)
        if twice_re.denominator != 1:
            return False
    return True


def q_mod(a: HurwitzQuaternion, p: int) -> tuple[int, int, int, int]:
    """Coordinates of ``a`` in the basis (e1, e2, e3, omega), reduced mod p."""
    if not in_hurwitz(a):
        raise LatticeError(f"{a} is not in the Hurwitz order")
    c1, c2, c3, c4 = a.c
    x4 = c4
    return (
        ((c1 - x4) // 2) % p,
        ((c2 - x4) // 2) % p,
        ((c3 - x4) // 2) % p,
        x4 % p,
    )


def from_order_coords(x: tuple[int, int, int, int]) -> HurwitzQuaternion:
    """Inverse of :func:`q_mod` (before reduction)."""
    x1, x2, x3, x4 = x
    return HurwitzQuaternion((2 * x1 + x4, 2 * x2 + x4, 2 * x3 + x4, x4))


_QLIT = re.compile(r"^\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")


def parse_quaternion(text: str) -> HurwitzQuaternion:
    """Parse ``"[c1,c2,c3,c4]"`` (doubled coordinates)."""
    m = _QLIT.match(text)
    if not m:
        raise ValueError(f"bad quaternion literal {text!r}")
    return HurwitzQuaternion(tuple(int(g) for g in m.groups()))
