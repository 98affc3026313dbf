"""Brute-force checks of the finite ingredients behind U(p) being a Hecke
operator: symplectic membership over O, sampling of Gamma_0(p), the coset
representatives gamma_T = [[0, -1], [1, T]], and the character sum over
Her_n(O) / p Her_n(O).

Character sums are decided by tallying tau(H, T) mod p: the sum of p-th roots
of unity vanishes exactly when the tally is uniform, so no complex numbers
are involved.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .hermitian import (
    HermitianForm,
    IntegralHermitian,
    divide_exact,
    enumerate_quotient,
    quotient_size,
    tau_pair,
)
from .quaternion import (
    HURWITZ_UNITS,
    ONE,
    ZERO,
    HurwitzQuaternion,
    LatticeError,
    in_hurwitz,
    in_p_order,
    mul4,
    q_conj,
)
from .arith import require_odd_prime

__all__ = [
    "QuaternionMatrix",
    "Verdict",
    "CharacterSumResult",
    "InvariantViolation",
    "identity",
    "J",
    "translation",
    "lower_translation",
    "gamma_T",
    "is_symplectic",
    "in_gamma_n",
    "in_gamma0",
    "sample_gamma0",
    "coset_rep_check",
    "character_sum",
    "random_integral_hermitian",
    "in_p_dual",
]

Matrix = tuple[tuple[HurwitzQuaternion, ...], ...]


class InvariantViolation(AssertionError):
    """A tally or identity came out in a way the lemmas rule out."""


@dataclass(frozen=True)
class QuaternionMatrix:
    """2n x 2n matrix over half-integral quaternions, blocks (A, B; C, D)."""

    n: int
    rows: Matrix
    word: tuple = field(default=(), compare=False)

    def __post_init__(self):
        size = 2 * self.n
        if len(self.rows) != size or any(len(r) != size for r in self.rows):
            raise ValueError(f"expected a {size}x{size} matrix")

    def block(self, name: str) -> Matrix:
        n = self.n
        i, j = {"A": (0, 0), "B": (0, n), "C": (n, 0), "D": (n, n)}[name]
        return tuple(tuple(self.rows[i + r][j + c] for c in range(n)) for r in range(n))

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.n, mat_mul(self.rows, other.rows))

    @classmethod
    def from_blocks(cls, A: Matrix, B: Matrix, C: Matrix, D: Matrix, word=()) -> "QuaternionMatrix":
        rows = tuple(a + b for a, b in zip(A, B)) + tuple(c + d for c, d in zip(C, D))
        return cls(len(A), rows, word)


# -- small dense matrix helpers over quaternions --------------------------

def _scalar(x: int) -> HurwitzQuaternion:
    return HurwitzQuaternion((2 * x, 0, 0, 0))


def mat_zero(n: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))


def mat_eye(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_add(X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(X, Y))


def mat_sub(X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(X, Y))


def mat_scale(X: Matrix, k: int) -> Matrix:
    return tuple(tuple(k * a for a in r) for r in X)


def _mul4_rows(X: Matrix, Y: Matrix) -> list[list[tuple[int, ...]]]:
    """Entries of 4 X Y as integer 4-tuples (exact, no lattice assumption)."""
    inner = len(Y)
    out = []
    for r in X:
        row = []
        for j in range(len(Y[0])):
            acc = [0, 0, 0, 0]
            for t in range(inner):
                prod = mul4(r[t], Y[t][j])
                for i in range(4):
                    acc[i] += prod[i]
            row.append(tuple(acc))
        out.append(row)
    return out


def mat_mul(X: Matrix, Y: Matrix) -> Matrix:
    """X Y; raises LatticeError if an entry is not half-integral."""
    out = []
    for row in _mul4_rows(X, Y):
        if any(v % 2 for e in row for v in e):
            raise LatticeError("matrix product leaves (1/2)Z^4")
        out.append(tuple(HurwitzQuaternion(tuple(v // 2 for v in e)) for e in row))
    return tuple(out)


def conj_transpose(X: Matrix) -> Matrix:
    return tuple(tuple(q_conj(X[i][j]) for i in range(len(X))) for j in range(len(X[0])))


def is_hermitian(X: Matrix) -> bool:
    return X == conj_transpose(X)


# -- group elements ---------------------------------------------------------

def identity(n: int) -> QuaternionMatrix:
    return QuaternionMatrix.from_blocks(mat_eye(n), mat_zero(n), mat_zero(n), mat_eye(n))


def J(n: int) -> QuaternionMatrix:
    return QuaternionMatrix.from_blocks(mat_zero(n), mat_eye(n), mat_scale(mat_eye(n), -1), mat_zero(n))


def translation(S: Matrix) -> QuaternionMatrix:
    n = len(S)
    return QuaternionMatrix.from_blocks(mat_eye(n), S, mat_zero(n), mat_eye(n))


def lower_translation(S: Matrix, p: int) -> QuaternionMatrix:
    n = len(S)
    return QuaternionMatrix.from_blocks(mat_eye(n), mat_zero(n), mat_scale(S, p), mat_eye(n))


def gamma_T(T: Matrix) -> QuaternionMatrix:
    n = len(T)
    return QuaternionMatrix.from_blocks(mat_zero(n), mat_scale(mat_eye(n), -1), mat_eye(n), T)


def gamma_T_inverse(T: Matrix) -> QuaternionMatrix:
    n = len(T)
    return QuaternionMatrix.from_blocks(T, mat_eye(n), mat_scale(mat_eye(n), -1), mat_zero(n))


def is_symplectic(M: QuaternionMatrix) -> bool:
    """conj(M)^t J M == J, checked through the three block identities."""
    A, B, C, D = (M.block(x) for x in "ABCD")
    n = M.n
    lhs1 = _mul4_rows(conj_transpose(A), C)
    rhs1 = _mul4_rows(conj_transpose(C), A)
    lhs2 = _mul4_rows(conj_transpose(B), D)
    rhs2 = _mul4_rows(conj_transpose(D), B)
    ad = _mul4_rows(conj_transpose(A), D)
    cb = _mul4_rows(conj_transpose(C), B)
    if lhs1 != rhs1 or lhs2 != rhs2:
        return False
    for i in range(n):
        for j in range(n):
            want = (4, 0, 0, 0) if i == j else (0, 0, 0, 0)
            got = tuple(x - y for x, y in zip(ad[i][j], cb[i][j]))
            if got != want:
                return False
    return True


def in_gamma_n(M: QuaternionMatrix) -> bool:
    return all(in_hurwitz(x) for r in M.rows for x in r) and is_symplectic(M)


def in_gamma0(M: QuaternionMatrix, p: int) -> bool:
    return all(in_p_order(x, p) for r in M.block("C") for x in r)


# -- sampling -------------------------------------------------------------

def _random_order_element(rng: random.Random, size: int) -> HurwitzQuaternion:
    if rng.random() < 0.5:
        return HurwitzQuaternion(tuple(2 * rng.randint(-size, size) for _ in range(4)))
    return HurwitzQuaternion(tuple(2 * rng.randint(-size, size - 1) + 1 for _ in range(4)))


def random_integral_hermitian(rng: random.Random, n: int, size: int = 2) -> Matrix:
    """Random element of Her_n(O) with small entries."""
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = _scalar(rng.randint(-size, size))
        for j in range(i + 1, n):
            t = _random_order_element(rng, size)
            rows[i][j] = t
            rows[j][i] = q_conj(t)
    return tuple(tuple(r) for r in rows)


def _random_monomial_unit(rng: random.Random, n: int) -> Matrix:
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[ZERO] * n for _ in range(n)]
    for i, j in enumerate(perm):
        rows[i][j] = rng.choice(HURWITZ_UNITS)
    return tuple(tuple(r) for r in rows)


def sample_gamma0(n: int, p: int, seed: int, word_length: int) -> QuaternionMatrix:
    """Random word in upper/lower translations and unit-diagonal matrices.

    Every generator lies in Gamma_0(p), so the product does too.  The word is
    attached to the result for replay.
    """
    if n not in (1, 2):
        raise ValueError("degree must be 1 or 2")
    require_odd_prime(p)
    rng = random.Random(f"{n}:{p}:{seed}")
    M = identity(n)
    word = []
    for _ in range(word_length):
        kind = rng.choice(("upper", "lower", "unit"))
        if kind == "unit":
            U = _random_monomial_unit(rng, n)
            # U is unitary, so conj(U)^t inverse equals U
            g = QuaternionMatrix.from_blocks(U, mat_zero(n), mat_zero(n), U)
            word.append(("unit", U))
        else:
            S = random_integral_hermitian(rng, n)
            g = translation(S) if kind == "upper" else lower_translation(S, p)
            word.append((kind, S))
        M = M @ g
    return QuaternionMatrix(n, M.rows, tuple(word))


# -- Lemma checks -----------------------------------------------------------

def _as_matrix(T, n: int) -> Matrix:
    if isinstance(T, IntegralHermitian):
        return ((_scalar(T.s), T.t), (q_conj(T.t), _scalar(T.u)))
    if isinstance(T, int):
        return ((_scalar(T),),) if n == 1 else tuple(
            tuple(_scalar(T) if i == j else ZERO for j in range(n)) for i in range(n))
    return T


def _congruent_zero(X: Matrix, p: int) -> bool:
    return all(in_p_order(x, p) for r in X for x in r)


def coset_rep_check(M: QuaternionMatrix, T, p: int) -> bool:
    """Check the coset-representative construction for one (M, T) pair.

    With S = conj(D)^t (B + T D): S is Hermitian over O, A S = B + T D mod p,
    and gamma_T M gamma_S^(-1) lies in Gamma_0(p) with C-block
    (A + T C) S - (B + T D).
    """
    n = M.n
    Tm = _as_matrix(T, n)
    A, B, C, D = (M.block(x) for x in "ABCD")
    BTD = mat_add(B, mat_mul(Tm, D))
    S = mat_mul(conj_transpose(D), BTD)
    if not (is_hermitian(S) and all(in_hurwitz(x) for r in S for x in r)):
        return False
    if not _congruent_zero(mat_sub(mat_mul(A, S), BTD), p):
        return False
    prod = gamma_T(Tm) @ M @ gamma_T_inverse(S)
    expected_C = mat_sub(mat_mul(mat_add(A, mat_mul(Tm, C)), S), BTD)
    if prod.block("C") != expected_C:
        return False
    return in_gamma_n(prod) and in_gamma0(prod, p)


class Verdict(Enum):
    ZERO = "Zero"
    FULL_MASS = "FullMass"


@dataclass(frozen=True)
class CharacterSumResult:
    counts: tuple[int, ...]
    verdict: Verdict

    @property
    def value(self) -> int:
        """The (integer) character sum: 0 or c."""
        return 0 if self.verdict is Verdict.ZERO else self.counts[0]


def character_sum(H, p: int, n: int = 2) -> CharacterSumResult:
    """Tally tau(H, T) mod p over T in Her_n(O) / p Her_n(O)."""
    require_odd_prime(p)
    counts = [0] * p
    if n == 1:
        for t in enumerate_quotient(1, p):
            counts[(H * t) % p] += 1
    elif n == 2:
        if not isinstance(H, HermitianForm):
            raise TypeError("degree 2 needs a HermitianForm")
        for T in enumerate_quotient(2, p):
            counts[tau_pair(H, T) % p] += 1
    else:
        raise ValueError("degree must be 1 or 2")
    c = quotient_size(n, p)
    if sum(counts) != c:
        raise InvariantViolation("tally does not cover the quotient")
    if counts[0] == c:
        verdict = Verdict.FULL_MASS
    elif all(x == c // p for x in counts):
        verdict = Verdict.ZERO
    else:
        raise InvariantViolation(f"non-uniform tally {counts} for {H}")
    return CharacterSumResult(tuple(counts), verdict)


def in_p_dual(H, p: int, n: int = 2) -> bool:
    """H in p Her_n^tau(O)."""
    if n == 1:
        return H % p == 0
    try:
        divide_exact(H, p)
    except LatticeError:
        return False
    return True
