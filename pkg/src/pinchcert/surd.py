"""Exact arithmetic for quadratic surds a + b*sqrt(d).

``a`` and ``b`` are rationals and ``d`` is a squarefree natural number; the
field Q(sqrt(d)) is closed under +, -, * and division by nonzero elements.
Values with different radicands cannot be combined (no general number-field
tower is attempted); ``d == 1`` degenerates to a plain rational.

Sign evaluation is exact (integer comparisons only), so surds can be compared
with rationals and with each other without any rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import DEFAULT_PRECISION, DyadicInterval, _as_fraction


class MixedRadicandError(ValueError):
    """Arithmetic combining two different irrational radicands."""


def squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, d') with d == s**2 * d' and d' squarefree."""
    if d < 1:
        raise ValueError("radicand must be a positive integer")
    s = 1
    rest = d
    p = 2
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, rest


@dataclass(frozen=True)
class QuadraticSurd:
    """Exact value a + b*sqrt(d) with d squarefree."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        s, rest = squarefree_split(self.d)
        if s != 1:
            object.__setattr__(self, "b", self.b * s)
            object.__setattr__(self, "d", rest)
        if self.d == 1:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))
        if self.b == 0:
            object.__setattr__(self, "d", 1)

    @classmethod
    def make(cls, a, b=0, d: int = 1) -> "QuadraticSurd":
        return cls(_as_fraction(a), _as_fraction(b), d)

    @classmethod
    def rational(cls, a) -> "QuadraticSurd":
        return cls.make(a)

    @classmethod
    def sqrt_of(cls, d: int) -> "QuadraticSurd":
        return cls.make(0, 1, d)

    def is_rational(self) -> bool:
        return self.b == 0

    # ---- ring operations -----------------------------------------------

    def _join(self, other) -> tuple["QuadraticSurd", "QuadraticSurd"]:
        if not isinstance(other, QuadraticSurd):
            other = QuadraticSurd.make(_as_fraction(other))
        if self.b == 0:
            return QuadraticSurd(self.a, Fraction(0), other.d if other.b else 1), other
        if other.b == 0:
            return self, QuadraticSurd(other.a, Fraction(0), self.d)
        if self.d != other.d:
            raise MixedRadicandError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
        return self, other

    def __add__(self, other):
        x, y = self._join(other)
        d = x.d if x.b else y.d
        return QuadraticSurd(x.a + y.a, x.b + y.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        x, y = self._join(other)
        d = x.d if x.b else y.d
        return QuadraticSurd(x.a - y.a, x.b - y.b, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        x, y = self._join(other)
        d = x.d if x.b else y.d
        return QuadraticSurd(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        x, y = self._join(other)
        d = x.d if x.b else y.d
        norm = y.a * y.a - y.b * y.b * d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        conj = QuadraticSurd(y.a, -y.b, d)
        num = x * conj
        return QuadraticSurd(num.a / norm, num.b / norm, d)

    def __rtruediv__(self, other):
        return QuadraticSurd.make(_as_fraction(other), 0, self.d) / self

    # ---- exact sign and comparisons --------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d) using only integer arithmetic."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with b^2 d
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (QuadraticSurd, int, Fraction)):
            try:
                return self._cmp(other) == 0
            except MixedRadicandError:
                return False
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # ---- enclosure -------------------------------------------------------

    def enclosure(self, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
        """Outward-rounded dyadic enclosure; contains the exact value at every precision."""
        acc = DyadicInterval.from_fraction(self.a, precision)
        if self.b == 0:
            return acc
        root = DyadicInterval.from_fraction(Fraction(self.d), precision).sqrt(precision)
        return acc.add(root.mul(DyadicInterval.from_fraction(self.b, precision), precision),
                       precision)

    def __float__(self) -> float:
        iv = self.enclosure(64)
        return float(iv.midpoint)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        bs = f"{self.b}*" if self.b not in (1, -1) else ("-" if self.b == -1 else "")
        if self.a == 0:
            return f"{bs}sqrt({self.d})"
        op = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        ms = f"{mag}*" if mag != 1 else ""
        return f"{self.a} {op} {ms}sqrt({self.d})"

    def __repr__(self) -> str:
        return f"QuadraticSurd({self})"
