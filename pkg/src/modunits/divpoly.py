"""Division polynomials specialised to the Tate normal form.

P_n is the n-division polynomial of the curve
Y^2 + (1-C)XY - BY = X^3 - BX^2 evaluated at the marked point (0, 0); it lies
in Z[B, C] and satisfies the standard division-polynomial recurrence.  F_n is
P_n with every factor shared with the discriminant D or with an earlier P_d
removed; for n >= 4 it is the defining polynomial of the order-n locus X1(n)
in the (B, C)-plane.
"""

from __future__ import annotations

import threading

from .bivar_poly import (
    B,
    C,
    ONE,
    ZERO,
    NotDivisible,
    RatPoly,
    div_exact,
    remove_common,
)

__all__ = ["DivPolyCache", "FactorizationIncomplete", "DISCRIMINANT", "P", "F", "discriminant"]


class FactorizationIncomplete(ArithmeticError):
    """A nonconstant cofactor survived trial division over the F-basis."""


# D = B^3 * (C^4 - 8BC^2 - 3C^3 + 16B^2 - 20BC + 3C^2 + B - C)
_D_COFACTOR = (
    C ** 4 - 8 * B * C ** 2 - 3 * C ** 3 + 16 * B ** 2 - 20 * B * C
    + 3 * C ** 2 + B - C
)
DISCRIMINANT = B ** 3 * _D_COFACTOR


class DivPolyCache:
    """Memoised P_n / F_n computation.

    The cache is the only mutable state; a reentrant lock makes it safe to
    share one instance across threads.  ``max_n`` guards against accidental
    huge requests (deg P_n grows quadratically); pass a larger value to
    override.
    """

    def __init__(self, max_n=200):
        self.max_n = max_n
        self._P = {0: ZERO, 1: ONE, 2: -B, 3: -(B ** 3), 4: C * B ** 5}
        self._F = {3: B}
        self._lock = threading.RLock()

    def P(self, n):
        """P_n, for any integer n (P_{-n} = -P_n)."""
        if abs(n) > self.max_n:
            raise ValueError(
                "n=%d exceeds the guard max_n=%d; construct "
                "DivPolyCache(max_n=...) to override" % (n, self.max_n)
            )
        if n < 0:
            return -self.P(-n)
        with self._lock:
            if n not in self._P:
                for k in range(max(self._P) + 1, n + 1):
                    self._P[k] = self._compute(k)
            return self._P[n]

    def _compute(self, n):
        P = self._P
        if n % 2:
            l = (n - 1) // 2
            return P[l + 2] * P[l] ** 3 - P[l + 1] ** 3 * P[l - 1]
        l = n // 2
        num = P[l] * (P[l + 2] * P[l - 1] ** 2 - P[l - 2] * P[l + 1] ** 2)
        # division by P_2 = -B is exact for every even index
        return div_exact(num, P[2])

    def discriminant(self):
        return DISCRIMINANT

    def F(self, n):
        """F_n: the defining polynomial for n >= 3 (F_2 = B^4/D as a RatPoly)."""
        if n < 2:
            raise ValueError("F_n is defined for n >= 2")
        if n == 2:
            return RatPoly(B ** 4, DISCRIMINANT)
        with self._lock:
            if n not in self._F:
                mods = [DISCRIMINANT] + [self.P(d) for d in range(2, n)]
                self._F[n] = remove_common(self.P(n), mods)
            return self._F[n]

    def factor_P_over_F(self, n):
        """Write P_n = sign * prod F_d^{a_d} * D^{a_D} by exact trial division.

        Returns (sign, exponents) where exponents maps d (int, with F_3 = B)
        or "D" to a_d; zero exponents are omitted.  Raises
        FactorizationIncomplete if a nonconstant cofactor survives.
        """
        if n < 2:
            raise ValueError("factorisation is defined for n >= 2")
        res = self.P(n)
        exps = {}
        quartic = _D_COFACTOR
        beta = _strip_full(res, quartic)
        res = beta[1]
        alpha = _strip_full(res, B)
        res = alpha[1]
        for d in range(4, n + 1):
            cnt, res = _strip_full(res, self.F(d))
            if cnt:
                exps[d] = cnt
        if not res.is_constant:
            raise FactorizationIncomplete(
                "nonconstant cofactor %r left for P_%d" % (res, n)
            )
        unit = res.constant()
        if unit not in (1, -1):
            raise FactorizationIncomplete(
                "non-unit constant %d left for P_%d" % (unit, n)
            )
        a3 = alpha[0] - 3 * beta[0]
        if a3:
            exps[3] = a3
        if beta[0]:
            exps["D"] = beta[0]
        return unit, exps


def _strip_full(f, g):
    """(multiplicity of g in f, cofactor) by repeated exact division."""
    count = 0
    while True:
        try:
            f2 = div_exact(f, g)
        except NotDivisible:
            return count, f
        f, count = f2, count + 1


_default_cache = DivPolyCache()


def P(n):
    return _default_cache.P(n)


def F(n):
    return _default_cache.F(n)


def discriminant():
    return DISCRIMINANT
