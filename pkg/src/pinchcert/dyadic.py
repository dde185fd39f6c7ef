"""Dyadic interval arithmetic with outward rounding.

Endpoints are dyadic rationals (m * 2**e) stored as ``Fraction`` values whose
denominators are powers of two.  Arithmetic is performed exactly on rationals
and the result is rounded outward (lower endpoint down, upper endpoint up) to
the working mantissa width, so for every supported operation ``op`` and every
x in X, y in Y the exact real value ``op(x, y)`` lies in ``op(X, Y)``.

Rounding grids nest as the precision grows, which makes enclosure widths of
sqrt/cbrt monotone (non-strictly) decreasing in the precision on fixed input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

DEFAULT_PRECISION = 128

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DivisionByZeroInterval(ZeroDivisionError):
    """Denominator interval contains zero."""


class NegativeSqrtDomain(ValueError):
    """Square root requested for an interval with a negative lower endpoint."""


def _is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def _round_down(x: Fraction, bits: int) -> Fraction:
    """Largest dyadic on the ``bits``-mantissa grid that is <= x."""
    if x == 0:
        return _ZERO
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    q = mag - bits
    if q >= 0:
        k = x.numerator // (x.denominator << q)
        return Fraction(k << q)
    k = (x.numerator << -q) // x.denominator
    return Fraction(k, 1 << -q)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return -_round_down(-x, bits)


def _isqrt_down(x: Fraction, bits: int) -> Fraction:
    """Dyadic lower bound for sqrt(x), x >= 0."""
    if x == 0:
        return _ZERO
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    q = mag // 2 - bits
    if q >= 0:
        big = x.numerator // (x.denominator << (2 * q))
    else:
        big = (x.numerator << (-2 * q)) // x.denominator
    m = math.isqrt(big)
    return Fraction(m << q) if q >= 0 else Fraction(m, 1 << -q)


def _isqrt_up(x: Fraction, bits: int) -> Fraction:
    """Dyadic upper bound for sqrt(x), x >= 0."""
    if x == 0:
        return _ZERO
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    q = mag // 2 - bits
    if q >= 0:
        den = x.denominator << (2 * q)
        big = -((-x.numerator) // den)  # ceil
        scaled = Fraction(x.numerator, den)
    else:
        num = x.numerator << (-2 * q)
        big = -((-num) // x.denominator)
        scaled = Fraction(num, x.denominator)
    m = math.isqrt(big)
    if Fraction(m * m) < scaled:
        m += 1
    return Fraction(m << q) if q >= 0 else Fraction(m, 1 << -q)


def _icbrt(n: int) -> int:
    """Floor integer cube root for n >= 0."""
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3 + 1)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def _cbrt_down(x: Fraction, bits: int) -> Fraction:
    if x < 0:
        return -_cbrt_up(-x, bits)
    if x == 0:
        return _ZERO
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    q = mag // 3 - bits
    if q >= 0:
        big = x.numerator // (x.denominator << (3 * q))
    else:
        big = (x.numerator << (-3 * q)) // x.denominator
    m = _icbrt(big)
    return Fraction(m << q) if q >= 0 else Fraction(m, 1 << -q)


def _cbrt_up(x: Fraction, bits: int) -> Fraction:
    if x < 0:
        return -_cbrt_down(-x, bits)
    if x == 0:
        return _ZERO
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    q = mag // 3 - bits
    if q >= 0:
        den = x.denominator << (3 * q)
        big = -((-x.numerator) // den)
        scaled = Fraction(x.numerator, den)
    else:
        num = x.numerator << (-3 * q)
        big = -((-num) // x.denominator)
        scaled = Fraction(num, x.denominator)
    m = _icbrt(big)
    if Fraction(m**3) < scaled:
        m += 1
    return Fraction(m << q) if q >= 0 else Fraction(m, 1 << -q)


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    raise TypeError(f"cannot interpret {v!r} as an exact rational")


@dataclass(frozen=True)
class DyadicInterval:
    """Certified enclosure [lo, hi] of a real number with dyadic endpoints."""

    lo: Fraction
    hi: Fraction
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not isinstance(self.lo, Fraction) or not isinstance(self.hi, Fraction):
            raise TypeError("endpoints must be Fractions")
        if self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")
        if not (_is_dyadic(self.lo) and _is_dyadic(self.hi)):
            raise ValueError("endpoints must be dyadic rationals")
        if self.precision < 2:
            raise ValueError("precision must be at least 2 bits")

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_fraction(cls, value, precision: int = DEFAULT_PRECISION) -> "DyadicInterval":
        """Tightest enclosure of an exact rational at the given precision."""
        v = _as_fraction(value)
        if _is_dyadic(v):
            return cls(v, v, precision)
        return cls(_round_down(v, precision), _round_up(v, precision), precision)

    @classmethod
    def from_endpoints(cls, lo, hi, precision: int = DEFAULT_PRECISION) -> "DyadicInterval":
        lof = _as_fraction(lo)
        hif = _as_fraction(hi)
        return cls(_round_down(lof, precision), _round_up(hif, precision), precision)

    # ---- inspection ----------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        if isinstance(value, DyadicInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        v = _as_fraction(value)
        return self.lo <= v <= self.hi

    def __contains__(self, value) -> bool:
        return self.contains(value)

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def strictly_less(self, other: "DyadicInterval") -> bool:
        """Certified strict ordering: every point of self < every point of other."""
        return self.hi < other.lo

    def strictly_greater(self, other: "DyadicInterval") -> bool:
        return self.lo > other.hi

    def hull(self, other: "DyadicInterval") -> "DyadicInterval":
        return DyadicInterval(min(self.lo, other.lo), max(self.hi, other.hi),
                              max(self.precision, other.precision))

    def widen(self, delta) -> "DyadicInterval":
        d = _as_fraction(delta)
        if d < 0:
            raise ValueError("widening amount must be nonnegative")
        return DyadicInterval(_round_down(self.lo - d, self.precision),
                              _round_up(self.hi + d, self.precision), self.precision)

    # ---- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return other
        return DyadicInterval.from_fraction(_as_fraction(other), self.precision)

    def _prec(self, other, precision) -> int:
        if precision is not None:
            return precision
        if isinstance(other, DyadicInterval):
            return max(self.precision, other.precision)
        return self.precision

    def add(self, other, precision: int | None = None) -> "DyadicInterval":
        p = self._prec(other, precision)
        o = self._coerce(other)
        return DyadicInterval(_round_down(self.lo + o.lo, p), _round_up(self.hi + o.hi, p), p)

    def sub(self, other, precision: int | None = None) -> "DyadicInterval":
        p = self._prec(other, precision)
        o = self._coerce(other)
        return DyadicInterval(_round_down(self.lo - o.hi, p), _round_up(self.hi - o.lo, p), p)

    def mul(self, other, precision: int | None = None) -> "DyadicInterval":
        p = self._prec(other, precision)
        o = self._coerce(other)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return DyadicInterval(_round_down(min(cands), p), _round_up(max(cands), p), p)

    def div(self, other, precision: int | None = None) -> "DyadicInterval":
        p = self._prec(other, precision)
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise DivisionByZeroInterval(f"denominator interval [{o.lo}, {o.hi}] contains zero")
        cands = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return DyadicInterval(_round_down(min(cands), p), _round_up(max(cands), p), p)

    def sqrt(self, precision: int | None = None) -> "DyadicInterval":
        p = precision if precision is not None else self.precision
        if self.lo < 0:
            raise NegativeSqrtDomain(f"sqrt of interval with lower endpoint {self.lo} < 0")
        return DyadicInterval(_isqrt_down(self.lo, p), _isqrt_up(self.hi, p), p)

    def cbrt(self, precision: int | None = None) -> "DyadicInterval":
        p = precision if precision is not None else self.precision
        return DyadicInterval(_cbrt_down(self.lo, p), _cbrt_up(self.hi, p), p)

    def __neg__(self) -> "DyadicInterval":
        return DyadicInterval(-self.hi, -self.lo, self.precision)

    def __add__(self, other):
        return self.add(other)

    __radd__ = __add__

    def __sub__(self, other):
        return self.sub(other)

    def __rsub__(self, other):
        return (-self).add(other)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.div(other)

    def __rtruediv__(self, other):
        return self._coerce(other).div(self)

    def max_with(self, other: "DyadicInterval") -> "DyadicInterval":
        """Pointwise maximum enclosure."""
        return DyadicInterval(max(self.lo, other.lo), max(self.hi, other.hi),
                              max(self.precision, other.precision))

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return f"DyadicInterval([{self.lo}, {self.hi}], bits={self.precision})"


_OPS = {
    "add": lambda a, b, p: a.add(b, p),
    "sub": lambda a, b, p: a.sub(b, p),
    "mul": lambda a, b, p: a.mul(b, p),
    "div": lambda a, b, p: a.div(b, p),
}


def interval_op(op: str, args, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Dispatch a named interval operation with outward rounding.

    ``op`` is one of add/sub/mul/div (binary) or sqrt/cbrt (unary); ``args``
    is the tuple of operand intervals.
    """
    if op in _OPS:
        a, b = args
        return _OPS[op](a, b, precision)
    if op == "sqrt":
        (a,) = args
        return a.sqrt(precision)
    if op == "cbrt":
        (a,) = args
        return a.cbrt(precision)
    raise ValueError(f"unknown interval operation {op!r}")


def fraction_to_decimal(x: Fraction) -> str:
    """Exact decimal rendering of a dyadic rational (no rounding)."""
    if not _is_dyadic(x):
        raise ValueError("exact decimal rendering requires a dyadic rational")
    num = x.numerator
    den = x.denominator
    k = den.bit_length() - 1  # den == 2**k
    sign = "-" if num < 0 else ""
    num = abs(num)
    scaled = num * 5**k  # num/2^k == scaled/10^k
    digits = str(scaled)
    if k == 0:
        return sign + digits
    digits = digits.rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def fraction_to_decimal_fixed(x: Fraction, places: int = 9) -> str:
    """Round-half-even decimal rendering with a fixed number of places."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10**places
    whole = scaled.numerator // scaled.denominator
    rem = scaled - whole
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and whole % 2 == 1):
        whole += 1
    digits = str(whole).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
