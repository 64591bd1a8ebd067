"""Exact truncated Puiseux series in q^(1/N) over the rationals.

A series is stored as a dense window of exact coefficients starting at its
lowest known exponent, plus an explicit precision: with exponent denominator
``denomN``, ``QSeries(denomN, ord, coeffs, precN)`` represents

    sum_j coeffs[j] * q^((ord+j)/denomN)  +  O(q^(precN/denomN))

with ``ord + len(coeffs) == precN`` and ``coeffs[0] != 0`` unless the series
is identically O(...).  All arithmetic tracks precision pessimistically
(min-based rules); no coefficient beyond the tracked window is ever invented.
Fractional powers are deliberately not implemented: every pipeline path uses
integer exponents only.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

__all__ = ["QSeries", "ZeroSeries"]


class ZeroSeries(ArithmeticError):
    """An operation needed a nonzero (invertible) series."""


def _norm_coeff(c):
    if isinstance(c, int):
        return c
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


class QSeries:
    __slots__ = ("denomN", "ord", "coeffs", "precN")

    def __init__(self, denomN, ord, coeffs, precN):
        if denomN < 1:
            raise ValueError("denomN must be a positive integer")
        coeffs = [_norm_coeff(c) for c in coeffs]
        if ord + len(coeffs) != precN:
            raise ValueError("ord + len(coeffs) must equal precN")
        # normalised truncation: leading coefficient nonzero, or empty window
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        ord += start
        coeffs = coeffs[start:]
        object.__setattr__(self, "denomN", denomN)
        object.__setattr__(self, "ord", ord)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "precN", precN)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, denomN, precN):
        """The series O(q^(precN/denomN))."""
        return cls(denomN, precN, [], precN)

    @classmethod
    def one(cls, denomN, precN):
        return cls(denomN, 0, [1] + [0] * (precN - 1), precN)

    @classmethod
    def monomial(cls, denomN, expnum, precN, coeff=1):
        if expnum >= precN:
            raise ValueError("monomial exponent beyond requested precision")
        return cls(denomN, expnum, [coeff] + [0] * (precN - expnum - 1), precN)

    @classmethod
    def from_terms(cls, denomN, terms, precN):
        """Build from a map {exponent numerator: coefficient}."""
        if not terms:
            return cls.zero(denomN, precN)
        lo = min(terms)
        if max(terms) >= precN:
            raise ValueError("term exponent beyond requested precision")
        coeffs = [0] * (precN - lo)
        for e, c in terms.items():
            coeffs[e - lo] = c
        return cls(denomN, lo, coeffs, precN)

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self):
        """True when no nonzero coefficient is tracked (series is O(...))."""
        return not self.coeffs

    def coeff(self, expnum):
        """Coefficient of q^(expnum/denomN); exact below the precision bound."""
        if expnum >= self.precN:
            raise ValueError(
                "coefficient at %d/%d is beyond the tracked precision"
                % (expnum, self.denomN)
            )
        if expnum < self.ord:
            return 0
        return self.coeffs[expnum - self.ord]

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.denomN == other.denomN
            and self.ord == other.ord
            and self.coeffs == other.coeffs
            and self.precN == other.precN
        )

    def __hash__(self):
        return hash((self.denomN, self.ord, self.coeffs, self.precN))

    def agrees_with(self, other):
        """Equality of all coefficients on the common tracked window."""
        if self.denomN != other.denomN:
            raise ValueError("exponent denominators differ; rescale first")
        window = min(self.precN, other.precN)
        lo = min(self.ord, other.ord)
        return all(self.coeff(n) == other.coeff(n) for n in range(lo, window))

    def first_difference(self, other):
        """Lowest exponent (as a Fraction) where the two series differ on the
        common window, or None if they agree."""
        if self.denomN != other.denomN:
            raise ValueError("exponent denominators differ; rescale first")
        window = min(self.precN, other.precN)
        lo = min(self.ord, other.ord)
        for n in range(lo, window):
            if self.coeff(n) != other.coeff(n):
                return Fraction(n, self.denomN)
        return None

    # -- arithmetic ------------------------------------------------------------

    def __neg__(self):
        return QSeries(self.denomN, self.ord, [-c for c in self.coeffs], self.precN)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.from_terms(self.denomN, {0: other}, self.precN)
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.denomN != other.denomN:
            raise ValueError("exponent denominators differ; rescale first")
        precN = min(self.precN, other.precN)
        lo = min(self.ord if self.coeffs else precN,
                 other.ord if other.coeffs else precN)
        coeffs = [0] * (precN - lo)
        for src in (self, other):
            for j, c in enumerate(src.coeffs):
                n = src.ord + j
                if n < precN:
                    coeffs[n - lo] += c
        return QSeries(self.denomN, lo, coeffs, precN)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.from_terms(self.denomN, {0: other}, self.precN)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return QSeries.zero(self.denomN, self.precN)
            return QSeries(
                self.denomN, self.ord, [c * other for c in self.coeffs], self.precN
            )
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.denomN != other.denomN:
            raise ValueError("exponent denominators differ; rescale first")
        f, g = self, other
        ford = f.ord if f.coeffs else f.precN
        gord = g.ord if g.coeffs else g.precN
        precN = min(f.precN + gord, g.precN + ford)
        ord_ = ford + gord
        L = precN - ord_
        out = [0] * L
        for i, a in enumerate(f.coeffs):
            if not a:
                continue
            jmax = min(len(g.coeffs), L - i)
            for j in range(jmax):
                b = g.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(self.denomN, ord_, out, precN)

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse, to the same relative precision."""
        if not self.coeffs:
            raise ZeroSeries("cannot invert a series with no tracked term")
        c0 = self.coeffs[0]
        L = len(self.coeffs)
        inv0 = _norm_coeff(Fraction(1, 1) / c0)
        u = [inv0] + [0] * (L - 1)
        cs = self.coeffs
        for k in range(1, L):
            s = 0
            for i in range(1, k + 1):
                ci = cs[i]
                if ci:
                    s += ci * u[k - i]
            if s:
                if isinstance(s, int) and isinstance(c0, int) and s % c0 == 0:
                    u[k] = -s // c0
                else:
                    u[k] = _norm_coeff(-Fraction(s) / c0)
        return QSeries(self.denomN, -self.ord, u, self.precN - 2 * self.ord)

    def pow_int(self, e):
        """Integer power by binary powering (negative e inverts first)."""
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if not self.coeffs:
            if e <= 0:
                raise ZeroSeries("zero-to-precision series has no inverse")
            # O(q^(p/N)) ** e = O(q^(ep/N))
            return QSeries.zero(self.denomN, self.precN * e)
        if e < 0:
            return self.inv().pow_int(-e)
        result = QSeries.one(self.denomN, self.precN - self.ord)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def rescale(self, M):
        """Reinterpret over the finer exponent grid q^(1/M); denomN must divide M."""
        if M % self.denomN:
            raise ValueError("denomN must divide the target denominator")
        k = M // self.denomN
        if k == 1:
            return self
        coeffs = [0] * (len(self.coeffs) * k)
        for j, c in enumerate(self.coeffs):
            coeffs[j * k] = c
        return QSeries(M, self.ord * k, coeffs, self.precN * k)

    # -- reduced form and coefficient predicates -------------------------------

    def reduced_form(self):
        """(lead, leadExp, fstar) with self = lead * q^leadExp * fstar and
        fstar having constant term 1."""
        if not self.coeffs:
            raise ZeroSeries("zero-to-precision series has no reduced form")
        c0 = self.coeffs[0]
        lead = Fraction(c0)
        lead_exp = Fraction(self.ord, self.denomN)
        fstar = QSeries(
            self.denomN,
            0,
            [_norm_coeff(Fraction(c) / lead) for c in self.coeffs],
            self.precN - self.ord,
        )
        return lead, lead_exp, fstar

    def is_integral(self):
        """True when every tracked coefficient is an integer."""
        return all(
            isinstance(c, int) or c.denominator == 1 for c in self.coeffs
        )

    def is_primitive(self):
        """True when the tracked coefficients are integers with gcd 1."""
        if not self.coeffs or not self.is_integral():
            return False
        g = 0
        for c in self.coeffs:
            g = _int_gcd(g, int(c))
            if g == 1:
                return True
        return g == 1

    # -- presentation --------------------------------------------------------

    def _term_str(self, n, c):
        e = Fraction(n, self.denomN)
        if e == 0:
            return str(c)
        if e == 1:
            mono = "q"
        elif e.denominator == 1:
            mono = "q^%d" % e.numerator
        else:
            mono = "q^(%s)" % e
        if c == 1:
            return mono
        if c == -1:
            return "-" + mono
        return "%s*%s" % (c, mono)

    def __repr__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            s = self._term_str(self.ord + j, c)
            if not parts:
                parts.append(s)
            else:
                parts.append(" - " + s[1:] if s.startswith("-") else " + " + s)
        tail = "O(q^(%s))" % Fraction(self.precN, self.denomN)
        if parts:
            return "QSeries(%s + %s)" % ("".join(parts), tail)
        return "QSeries(%s)" % tail

    __str__ = __repr__

    # -- JSON ------------------------------------------------------------------

    def to_obj(self):
        return {
            "denomN": self.denomN,
            "ord": self.ord,
            "precN": self.precN,
            "coeffs": [str(Fraction(c)) for c in self.coeffs],
        }

    @classmethod
    def from_obj(cls, obj):
        return cls(
            int(obj["denomN"]),
            int(obj["ord"]),
            [Fraction(c) for c in obj["coeffs"]],
            int(obj["precN"]),
        )
