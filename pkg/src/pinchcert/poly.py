"""Multivariate polynomials with exact rational coefficients.

The variable alphabet is fixed.  The first ten names carry the quantities
that appear in the inequality chain (split ratio t, curvature norm S, the
gradient sums A, B, C, the squared cubic gradient F3SQ, the traceless
fourth-order defect f, the normalized cubic power sum y, the dimension n and
the bootstrap coefficient a); F4, alpha and USQ are scratch symbols used
while assembling certificates (quartic power sum, quadratic-form weight, and
the squared norm of the cyclic derivative average).

Monomials are exponent tuples over the full alphabet; zero coefficients are
never stored, so equality is structural.  ``PolyFraction`` is the fraction
field used wherever denominators such as (1-t) or S**2 occur; clearing them
against certified-positive factors is the caller's responsibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import _as_fraction

VARIABLES = ("t", "S", "A", "B", "C", "F3SQ", "f", "y", "n", "a",
             "F4", "alpha", "USQ")
_NV = len(VARIABLES)
_VIDX = {name: i for i, name in enumerate(VARIABLES)}
_ZMONO = (0,) * _NV


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(m1, m2))


class MultiPoly:
    """Polynomial over the fixed alphabet with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                c = _as_fraction(coeff)
                if c != 0:
                    clean[mono] = c
        self.terms = clean

    # ---- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls({_ZMONO: _as_fraction(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        if name not in _VIDX:
            raise KeyError(f"unknown variable {name!r}; alphabet is {VARIABLES}")
        mono = [0] * _NV
        mono[_VIDX[name]] = power
        return cls({tuple(mono): Fraction(1)})

    @staticmethod
    def lift(value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.const(_as_fraction(value))

    # ---- ring operations --------------------------------------------------

    def __add__(self, other):
        o = MultiPoly.lift(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MultiPoly.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = MultiPoly.lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.lift(other)
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # ---- structure ----------------------------------------------------------

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(VARIABLES[i])
        return used

    def degree(self, name: str) -> int:
        i = _VIDX[name]
        return max((m[i] for m in self.terms), default=0)

    def coefficients_by(self, name: str) -> dict:
        """Group terms by the power of one variable: {power: MultiPoly}."""
        i = _VIDX[name]
        out: dict = {}
        for m, c in self.terms.items():
            k = m[i]
            rest = list(m)
            rest[i] = 0
            bucket = out.setdefault(k, {})
            bucket[tuple(rest)] = bucket.get(tuple(rest), Fraction(0)) + c
        return {k: MultiPoly(v) for k, v in out.items()}

    def univariate(self, name: str) -> list:
        """Dense coefficient list (low to high) when self involves only ``name``."""
        extra = self.variables() - {name}
        if extra:
            raise ValueError(f"polynomial also involves {sorted(extra)}")
        i = _VIDX[name]
        deg = self.degree(name)
        coeffs = [Fraction(0)] * (deg + 1)
        for m, c in self.terms.items():
            coeffs[m[i]] = c
        return coeffs

    def substitute(self, subs: dict) -> "MultiPoly":
        """Replace variables by polynomials (missing variables stay intact)."""
        lifted = {name: MultiPoly.lift(v) for name, v in subs.items()}
        result = MultiPoly.zero()
        for m, c in self.terms.items():
            term = MultiPoly.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                name = VARIABLES[i]
                if name in lifted:
                    term = term * lifted[name] ** e
                else:
                    term = term * MultiPoly.var(name, e)
            result = result + term
        return result

    def evaluate(self, point: dict) -> Fraction:
        vals = {name: _as_fraction(v) for name, v in point.items()}
        missing = self.variables() - set(vals)
        if missing:
            raise KeyError(f"no value supplied for {sorted(missing)}")
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for i, e in enumerate(m):
                if e:
                    prod *= vals[VARIABLES[i]] ** e
            total += prod
        return total

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients); 1 for the zero poly."""
        if not self.terms:
            return Fraction(1)
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(1)

    def monomial_gcd(self) -> tuple:
        """Componentwise minimum exponent vector across all terms."""
        if not self.terms:
            return _ZMONO
        mins = [None] * _NV
        for m in self.terms:
            for i, e in enumerate(m):
                mins[i] = e if mins[i] is None else min(mins[i], e)
        return tuple(mins)

    def divide_monomial(self, mono: tuple) -> "MultiPoly":
        out = {}
        for m, c in self.terms.items():
            out[tuple(a - b for a, b in zip(m, mono))] = c
        return MultiPoly(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(VARIABLES[i])
                elif e > 1:
                    factors.append(f"{VARIABLES[i]}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        joined = " + ".join(parts)
        return joined.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def reduce_linear(poly: MultiPoly, name: str, value: MultiPoly) -> tuple:
    """Rewrite ``poly`` modulo the relation ``name == value``.

    Returns (reduced, quotient) with poly == reduced + quotient*(var - value),
    so the quotient is the exact multiplier certificate for the elimination.
    """
    var = MultiPoly.var(name)
    by_power = poly.coefficients_by(name)
    deg = max(by_power, default=0)
    reduced = MultiPoly.zero()
    quotient = MultiPoly.zero()
    for k, coeff in by_power.items():
        reduced = reduced + coeff * value**k
        # var^k - value^k == (var - value) * sum_{j<k} var^j value^{k-1-j}
        for j in range(k):
            quotient = quotient + coeff * var**j * value ** (k - 1 - j)
    assert deg >= 0
    return reduced, quotient


class PolyFraction:
    """Quotient num/den of MultiPoly values (den not identically zero)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        n = MultiPoly.lift(num)
        d = MultiPoly.lift(den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if n.is_zero():
            d = MultiPoly.const(1)
        else:
            gm = tuple(min(a, b) for a, b in zip(n.monomial_gcd(), d.monomial_gcd()))
            if any(gm):
                n = n.divide_monomial(gm)
                d = d.divide_monomial(gm)
            cd = d.content()
            if cd != 1:
                inv = 1 / cd
                n = n * inv
                d = d * inv
        self.num = n
        self.den = d

    @staticmethod
    def lift(value) -> "PolyFraction":
        if isinstance(value, PolyFraction):
            return value
        return PolyFraction(MultiPoly.lift(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = PolyFraction.lift(other)
        return PolyFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-PolyFraction.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = PolyFraction.lift(other)
        return PolyFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = PolyFraction.lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero polynomial fraction")
        return PolyFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return PolyFraction.lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return PolyFraction(self.den, self.num) ** (-k)
        return PolyFraction(self.num**k, self.den**k)

    def __eq__(self, other):
        o = PolyFraction.lift(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def substitute(self, subs: dict) -> "PolyFraction":
        """Substitute variables by PolyFraction/MultiPoly/rational values."""
        num = _subst_pf(self.num, subs)
        den = _subst_pf(self.den, subs)
        return num / den

    def evaluate(self, point: dict) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        if self.den == MultiPoly.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"PolyFraction({self})"


def _subst_pf(poly: MultiPoly, subs: dict) -> PolyFraction:
    lifted = {name: PolyFraction.lift(v) for name, v in subs.items()}
    result = PolyFraction.lift(0)
    for m, c in poly.terms.items():
        term = PolyFraction.lift(c)
        for i, e in enumerate(m):
            if not e:
                continue
            name = VARIABLES[i]
            if name in lifted:
                term = term * lifted[name] ** e
            else:
                term = term * PolyFraction.lift(MultiPoly.var(name, e))
        result = result + term
    return result
