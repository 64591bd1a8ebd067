"""The exponent-lattice view of units on X1(N).

Units are written over the Siegel basis indexed k = 1..m, m = floor(N/2).
An integer exponent vector e lies in the group S exactly when

    sum_k e(k) = 0 mod 12    and    sum_k k^2 e(k) = 0 mod N*gcd(N, 2),

and S is a full-rank sublattice of Z^m.  This module computes a canonical
basis of S (Hermite normal form), converts between the {b, d, p_n} and Siegel
generating sets in both directions, and decomposes reduced unit series into
exponent vectors by the greedy coefficient scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Tuple

from .siegel import fold_index, h_star

__all__ = [
    "ExpVector",
    "PExpression",
    "NotInS",
    "InsufficientPrecision",
    "NotAUnitProduct",
    "is_in_S",
    "basis_S",
    "lattice_index",
    "t_to_h",
    "d_to_h",
    "v_to_h",
    "p_to_h",
    "to_p_expression",
    "expand_p_expression",
    "decompose_series",
    "leading_exponent_check",
]


class NotInS(ValueError):
    """The exponent vector fails the two congruences defining S."""


class InsufficientPrecision(ValueError):
    """The series precision is too small for the requested decomposition."""


class NotAUnitProduct(ValueError):
    """The series is not the reduced form of an integral Siegel product."""


@dataclass(frozen=True)
class ExpVector:
    """Integer exponents over the Siegel basis indexed k = 1..floor(N/2)."""

    N: int
    e: Tuple[int, ...]

    def __post_init__(self):
        if self.N < 4:
            raise ValueError("level N must be at least 4")
        e = tuple(int(x) for x in self.e)
        if len(e) != self.N // 2:
            raise ValueError(
                "expected %d exponents at level %d, got %d"
                % (self.N // 2, self.N, len(e))
            )
        object.__setattr__(self, "e", e)

    @classmethod
    def zero(cls, N):
        return cls(N, (0,) * (N // 2))

    @classmethod
    def unit(cls, N, k):
        m = N // 2
        if not 1 <= k <= m:
            raise ValueError("basis index %d outside [1, %d]" % (k, m))
        return cls(N, tuple(1 if i == k else 0 for i in range(1, m + 1)))

    @property
    def m(self):
        return self.N // 2

    @property
    def sum1(self):
        return sum(self.e)

    @property
    def sum2(self):
        return sum(k * k * ek for k, ek in enumerate(self.e, start=1))

    @property
    def ledger(self):
        return (self.sum1, self.sum2)

    def __add__(self, other):
        if not isinstance(other, ExpVector):
            return NotImplemented
        if self.N != other.N:
            raise ValueError("levels differ")
        return ExpVector(self.N, tuple(a + b for a, b in zip(self.e, other.e)))

    def __sub__(self, other):
        if not isinstance(other, ExpVector):
            return NotImplemented
        if self.N != other.N:
            raise ValueError("levels differ")
        return ExpVector(self.N, tuple(a - b for a, b in zip(self.e, other.e)))

    def __neg__(self):
        return ExpVector(self.N, tuple(-a for a in self.e))

    def scale(self, c):
        return ExpVector(self.N, tuple(c * a for a in self.e))

    def to_obj(self):
        return {"N": self.N, "e": list(self.e)}

    @classmethod
    def from_obj(cls, obj):
        return cls(int(obj["N"]), tuple(int(x) for x in obj["e"]))


@dataclass(frozen=True)
class PExpression:
    """A unit over the p-basis: d^alpha * (p_{N-m-1} p_{m+1}^{-1})^beta * prod p_k^{pexp(k)}."""

    N: int
    alpha: int
    beta: int
    pexp: Tuple[int, ...]

    def to_obj(self):
        return {
            "N": self.N,
            "alpha": self.alpha,
            "beta": self.beta,
            "pexp": list(self.pexp),
        }

    @classmethod
    def from_obj(cls, obj):
        return cls(
            int(obj["N"]),
            int(obj["alpha"]),
            int(obj["beta"]),
            tuple(int(x) for x in obj["pexp"]),
        )


def _modulus2(N):
    return N * _int_gcd(N, 2)


def is_in_S(e):
    """Both congruences: sum e(k) = 0 mod 12, sum k^2 e(k) = 0 mod N*gcd(N,2)."""
    return e.sum1 % 12 == 0 and e.sum2 % _modulus2(e.N) == 0


# -- integer lattice machinery (row-style Hermite normal form) ----------------


def _hnf_rows(rows):
    """Canonical row Hermite normal form: pivots positive, entries above each
    pivot reduced into [0, pivot).  Returns the list of nonzero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= len(mat):
            break
        # eliminate below pivot_row in this column
        for r in range(pivot_row + 1, len(mat)):
            while mat[r][col]:
                a, b = mat[pivot_row][col], mat[r][col]
                if a == 0:
                    mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
                    continue
                q = b // a
                if q:
                    for j in range(ncols):
                        mat[r][j] -= q * mat[pivot_row][j]
                if mat[r][col]:
                    mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
        if mat[pivot_row][col] == 0:
            continue
        if mat[pivot_row][col] < 0:
            mat[pivot_row] = [-x for x in mat[pivot_row]]
        piv = mat[pivot_row][col]
        for r in range(pivot_row):
            q = mat[r][col] // piv
            if q:
                for j in range(ncols):
                    mat[r][j] -= q * mat[pivot_row][j]
        pivot_row += 1
    return [row for row in mat[:pivot_row]]


def _left_kernel(mat):
    """Basis of {x : x * mat = 0} over Z, via HNF of [mat | I]."""
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    aug = [list(mat[i]) + [1 if j == i else 0 for j in range(nrows)] for i in range(nrows)]
    # full elimination on the mat-part only, carrying the identity part along
    h = _hnf_full(aug, ncols)
    kernel = []
    for row in h:
        if all(x == 0 for x in row[:ncols]):
            kernel.append(row[ncols:])
    return kernel


def _hnf_full(mat, lead_cols):
    """Row reduction as in _hnf_rows but only pivoting on the first lead_cols
    columns; returns all rows (zero-lead rows hold kernel data)."""
    mat = [list(r) for r in mat]
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(lead_cols):
        if pivot_row >= len(mat):
            break
        for r in range(pivot_row + 1, len(mat)):
            while mat[r][col]:
                a = mat[pivot_row][col]
                if a == 0:
                    mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
                    continue
                q = mat[r][col] // a
                if q:
                    for j in range(ncols):
                        mat[r][j] -= q * mat[pivot_row][j]
                if mat[r][col]:
                    mat[pivot_row], mat[r] = mat[r], mat[pivot_row]
        if mat[pivot_row][col] == 0:
            continue
        if mat[pivot_row][col] < 0:
            mat[pivot_row] = [-x for x in mat[pivot_row]]
        piv = mat[pivot_row][col]
        for r in range(pivot_row):
            q = mat[r][col] // piv
            if q:
                for j in range(ncols):
                    mat[r][j] -= q * mat[pivot_row][j]
        pivot_row += 1
    return mat


def basis_S(N):
    """A canonical Z-basis of S at level N: m = floor(N/2) vectors in HNF with
    positive pivots.  Every basis vector satisfies both congruences."""
    if N < 4:
        raise ValueError("level N must be at least 4")
    m = N // 2
    M = _modulus2(N)
    row1 = [1] * m + [12, 0]
    row2 = [k * k for k in range(1, m + 1)] + [0, M]
    # right kernel of the 2 x (m+2) matrix = left kernel of its transpose
    transpose = [[row1[j], row2[j]] for j in range(m + 2)]
    kernel = _left_kernel(transpose)
    projected = [vec[:m] for vec in kernel]
    rows = _hnf_rows(projected)
    basis = [ExpVector(N, tuple(r)) for r in rows]
    assert len(basis) == m, "kernel projection lost rank"
    assert all(is_in_S(e) for e in basis)
    return basis


def lattice_index(N):
    """The index [Z^m : S] = |det| of the canonical basis matrix (reported,
    not asserted against any closed form)."""
    basis = basis_S(N)
    det = 1
    for i, vec in enumerate(basis):
        det *= vec.e[i]
    return abs(det)


# -- the generator dictionary --------------------------------------------------


def _fold_accumulate(N, pairs):
    """Fold indexed powers prod h_{(n/N,0)}^{c} into [1, m]; returns (sign, vector)."""
    m = N // 2
    vec = [0] * m
    sign = 1
    for n, c in pairs:
        k, s = fold_index(n, N)
        vec[k - 1] += c
        if s < 0 and c % 2:
            sign = -sign
    return sign, ExpVector(N, tuple(vec))


def t_to_h(N):
    """Exponent vector of t = h_{(1/N,0)}^2 h_{(3/N,0)} h_{(2/N,0)}^{-3},
    with indices folded into [1, m]."""
    sign, vec = _fold_accumulate(N, [(1, 2), (2, -3), (3, 1)])
    assert sign == 1
    return vec


def d_to_h(N):
    """Exponent vector of d = (t * h_{(1/N,0)})^12."""
    return (t_to_h(N) + ExpVector.unit(N, 1)).scale(12)


def v_to_h(N):
    """Exponent vector of v = t^(gcd(2,N)*N)."""
    return t_to_h(N).scale(_int_gcd(2, N) * N)


def p_to_h(n, N):
    """Exponent vector of p_n = t^(n^2-1) h_{(n/N,0)} / h_{(1/N,0)}.

    Returns (sign, ExpVector) with all indices folded into [1, m], or None
    when n = 0 mod N (p_n is the zero function there).
    """
    if n < 1:
        raise ValueError("p_n is indexed by n >= 1")
    if n % N == 0:
        return None
    k, s = fold_index(n, N)
    vec = t_to_h(N).scale(n * n - 1) + ExpVector.unit(N, k) - ExpVector.unit(N, 1)
    return s, vec


def to_p_expression(e):
    """Convert e in S to the p-basis: alpha = sum1/12, beta = sum2/(N gcd(2,N))."""
    if not is_in_S(e):
        raise NotInS("vector %r fails the S congruences" % (e,))
    return PExpression(e.N, e.sum1 // 12, e.sum2 // _modulus2(e.N), e.e)


def expand_p_expression(p):
    """Expand a PExpression back over the Siegel basis via the p_n and d
    dictionaries.  Returns (sign, ExpVector); composing with to_p_expression
    is the identity on S."""
    N = p.N
    m = N // 2
    sign = 1
    total = ExpVector.zero(N)
    if p.alpha:
        total = total + d_to_h(N).scale(p.alpha)
    if p.beta:
        s1, low = p_to_h(N - m - 1, N)
        s2, high = p_to_h(m + 1, N)
        total = total + (low - high).scale(p.beta)
        if p.beta % 2:
            sign *= s1 * s2
    for k, ek in enumerate(p.pexp, start=1):
        if not ek:
            continue
        s, vec = p_to_h(k, N)
        total = total + vec.scale(ek)
        if s < 0 and ek % 2:
            sign = -sign
    return sign, total


def decompose_series(fstar, N):
    """Recover the exponent vector from the reduced form of a Siegel product.

    The caller promises fstar is the reduced form of some product over the
    basis; the greedy scan reads e(k) from the coefficient of q^(k/N) (halved
    when 2k = N), divides the factor out, and finally checks that the residual
    is exactly 1 on the tracked window.  A false promise surfaces as
    NotAUnitProduct.
    """
    if fstar.denomN != N:
        raise ValueError("series must live on the q^(1/%d) grid" % N)
    m = N // 2
    if fstar.precN < m + 1:
        raise InsufficientPrecision(
            "need precision at least %d, have %d" % (m + 1, fstar.precN)
        )
    if fstar.is_zero or fstar.ord != 0 or fstar.coeff(0) != 1:
        raise NotAUnitProduct("series is not reduced (constant term 1)")
    work = fstar
    exps = []
    for k in range(1, m + 1):
        c = work.coeff(k)
        if 2 * k == N:
            ek = -Fraction(c) / 2
        else:
            ek = -Fraction(c)
        if ek.denominator != 1:
            raise NotAUnitProduct(
                "coefficient at q^(%d/%d) is not consistent with an integral product" % (k, N)
            )
        ek = int(ek)
        exps.append(ek)
        if ek:
            work = work * h_star(k, N, work.precN).pow_int(-ek)
    if work.ord != 0 or work.coeff(0) != 1 or any(work.coeffs[1:]):
        raise NotAUnitProduct("residual after the greedy scan is not 1")
    return ExpVector(N, tuple(exps))


def leading_exponent_check(e):
    """Exact test that sum_k e(k)(6k^2 - 6kN + N^2) / (12 N^2) lies in (1/N)Z."""
    N = e.N
    val = sum(ek * (6 * k * k - 6 * k * N + N * N) for k, ek in enumerate(e.e, start=1))
    return val % (12 * N) == 0
