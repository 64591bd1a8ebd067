"""Siegel-function q-expansions at the points (k/N, 0).

The function indexed by a = (a1, 0) with 0 < a1 <= 1/2 expands as

    i * q^w * (1 - q^a1) * prod_{n>=1} (1 - q^(n+a1)) (1 - q^(n-a1)),

with w = (a1^2 - a1 + 1/6)/2.  The reduced series (constant term 1) has
integer coefficients and lives on the q^(1/N) grid; the scalar i and the
rational exponent w are tracked separately, so the whole computation stays in
exact rational arithmetic.  Indices outside [1, N/2] fold back via
h_{-a} = -h_a and h_{(a1+1,0)} = -h_{(a1,0)}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Optional

from .qseries import QSeries

if TYPE_CHECKING:  # pragma: no cover
    from .unit_lattice import ExpVector

__all__ = [
    "BadIndex",
    "ZeroIndexError",
    "SiegelProduct",
    "h_star",
    "lead_exponent",
    "fold_index",
    "product_series",
]


class BadIndex(ValueError):
    """Index k outside the range 1 <= k <= floor(N/2)."""


class ZeroIndexError(ValueError):
    """The Siegel function is undefined at lattice points (n = 0 mod N)."""


def _check_index(k, N):
    if N < 4:
        raise BadIndex("level N must be at least 4, got %d" % N)
    if not 1 <= k <= N // 2:
        raise BadIndex("index k=%d outside [1, %d] at level %d" % (k, N // 2, N))


def lead_exponent(k, N):
    """The leading q-exponent ((k/N)^2 - k/N + 1/6)/2 of the function at (k/N, 0)."""
    _check_index(k, N)
    a = Fraction(k, N)
    return (a * a - a + Fraction(1, 6)) / 2


@lru_cache(maxsize=None)
def h_star(k, N, precN):
    """Reduced series (constant term 1) of the Siegel function at (k/N, 0),
    known modulo q^(precN/N).

    Product factors whose exponent reaches precN/N are omitted; each such
    factor is 1 + O(q^(precN/N)), so the truncation is exact.
    """
    _check_index(k, N)
    if precN < 1:
        raise ValueError("precN must be at least 1")
    exps = []
    if k < precN:
        exps.append(k)
    n = 1
    while n * N - k < precN:
        exps.append(n * N - k)
        if n * N + k < precN:
            exps.append(n * N + k)
        n += 1
    series = QSeries.one(N, precN)
    for e in exps:
        series = QSeries.from_terms(N, {0: 1, e: -1}, precN) * series
    return series


def fold_index(n, N):
    """Fold an arbitrary index: returns (k, sign) with 1 <= k <= floor(N/2)
    such that the function at (n/N, 0) equals sign times the one at (k/N, 0).

    Raises ZeroIndexError when n = 0 mod N.
    """
    if N < 4:
        raise BadIndex("level N must be at least 4, got %d" % N)
    r = n % N
    if r == 0:
        raise ZeroIndexError("index %d vanishes modulo the level %d" % (n, N))
    s = (n - r) // N
    sign = -1 if s % 2 else 1
    k = r if 2 * r <= N else N - r
    return k, sign


@dataclass(frozen=True)
class SiegelProduct:
    """A unit written multiplicatively: scalar * i^ipow * q^leadExp * fstar,
    with fstar a reduced series (constant term 1)."""

    N: int
    ipow: int
    scalar: Fraction
    leadExp: Fraction
    fstar: QSeries
    evec: Optional["ExpVector"] = None

    def __mul__(self, other):
        if not isinstance(other, SiegelProduct):
            return NotImplemented
        if self.N != other.N:
            raise ValueError("levels differ")
        evec = None
        if self.evec is not None and other.evec is not None:
            evec = self.evec + other.evec
        return SiegelProduct(
            self.N,
            (self.ipow + other.ipow) % 4,
            self.scalar * other.scalar,
            self.leadExp + other.leadExp,
            self.fstar * other.fstar,
            evec,
        )

    def to_qseries(self):
        """Resolve to a plain rational series; requires an even power of i and
        a leading exponent on the q^(1/N) grid."""
        if self.ipow % 2:
            raise ValueError("phase i^%d is not rational" % self.ipow)
        shift = self.leadExp * self.N
        if shift.denominator != 1:
            raise ValueError(
                "leading exponent %s is not a multiple of 1/%d" % (self.leadExp, self.N)
            )
        shift = int(shift)
        scale = self.scalar if self.ipow == 0 else -self.scalar
        coeffs = [scale * c for c in self.fstar.coeffs]
        return QSeries(
            self.N, self.fstar.ord + shift, coeffs, self.fstar.precN + shift
        )

    def to_obj(self):
        return {
            "ipow": self.ipow,
            "scalar": str(self.scalar),
            "leadExp": str(self.leadExp),
            "fstar": self.fstar.to_obj(),
        }


def product_series(e, precN):
    """The product over k of the (k/N, 0) Siegel functions to the powers e(k),
    as a SiegelProduct at the requested precision."""
    N = e.N
    ipow = sum(e.e) % 4
    lead = Fraction(0)
    fstar = QSeries.one(N, precN)
    for k, ek in enumerate(e.e, start=1):
        if not ek:
            continue
        lead += ek * lead_exponent(k, N)
        fstar = fstar * h_star(k, N, precN).pow_int(ek)
    return SiegelProduct(N, ipow, Fraction(1), lead, fstar, e)
