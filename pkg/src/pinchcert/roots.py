"""Real-root isolation for univariate polynomials over the rationals.

Sturm sequences are computed with exact Fraction arithmetic (no floating
point anywhere), so root counts on a box are unambiguous even when roots sit
close to subdivision points.  Isolation bisects dyadically, which keeps all
interval endpoints dyadic; a root hit exactly by an endpoint or a split point
is factored out and reported as a point interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import DyadicInterval, _as_fraction
from .poly import MultiPoly


class ZeroPolynomial(ValueError):
    """Root isolation of the identically-zero polynomial."""


def poly_eval(coeffs: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _trim(coeffs: list) -> list:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_divmod(a: list, b: list) -> tuple:
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        k = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[k] = factor
        for i, bc in enumerate(b):
            r[i + k] -= factor * bc
        r.pop()  # leading term cancels exactly
        r = _trim(r)
        if not r:
            break
    return _trim(q), _trim(r)


def poly_gcd(a: list, b: list) -> list:
    a = _trim(a)
    b = _trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def derivative(coeffs: list) -> list:
    return [c * k for k, c in enumerate(coeffs)][1:]


def squarefree_part(coeffs: list) -> list:
    coeffs = _trim(coeffs)
    if len(coeffs) <= 2:
        return coeffs
    g = poly_gcd(coeffs, derivative(coeffs))
    if len(g) <= 1:
        return coeffs
    q, r = poly_divmod(coeffs, g)
    assert not r, "gcd must divide the polynomial exactly"
    return q


def sturm_chain(coeffs: list) -> list:
    chain = [_trim(coeffs)]
    d = _trim(derivative(coeffs))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(values: list) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def count_roots_halfopen(chain: list, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] by Sturm's theorem."""
    va = _variations([poly_eval(p, a) for p in chain])
    vb = _variations([poly_eval(p, b) for p in chain])
    return va - vb


def _deflate(coeffs: list, root: Fraction) -> list:
    q, r = poly_divmod(coeffs, [-root, Fraction(1)])
    assert not r, "claimed root does not divide the polynomial"
    return q


def _isolate_rec(coeffs: list, chain: list, lo: Fraction, hi: Fraction, out: list):
    """Collect isolating intervals for roots in (lo, hi); pre: p(lo), p(hi) != 0."""
    n = count_roots_halfopen(chain, lo, hi)
    if n == 0:
        return
    flo = poly_eval(coeffs, lo)
    fhi = poly_eval(coeffs, hi)
    if n == 1 and (flo > 0) != (fhi > 0):
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    if poly_eval(coeffs, mid) == 0:
        out.append((mid, mid))
        reduced = _deflate(coeffs, mid)
        rchain = sturm_chain(reduced)
        _isolate_rec(reduced, rchain, lo, mid, out)
        _isolate_rec(reduced, rchain, mid, hi, out)
        return
    _isolate_rec(coeffs, chain, lo, mid, out)
    _isolate_rec(coeffs, chain, mid, hi, out)


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint intervals each containing exactly one real root.

    Point intervals mark roots hit exactly; every other interval has
    endpoints of strictly opposite sign for the squarefree part.
    """

    polynomial: MultiPoly
    variable: str
    intervals: tuple

    def refined(self, width) -> "RootIsolation":
        target = _as_fraction(width)
        coeffs = squarefree_part(self.polynomial.univariate(self.variable))
        refined = tuple(_refine(coeffs, iv, target) for iv in self.intervals)
        return RootIsolation(self.polynomial, self.variable, refined)

    def __len__(self) -> int:
        return len(self.intervals)


def _refine(coeffs: list, iv: DyadicInterval, width: Fraction) -> DyadicInterval:
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    flo = poly_eval(coeffs, lo)
    fhi = poly_eval(coeffs, hi)
    assert flo * fhi < 0, "bracket endpoints must have opposite signs"
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = poly_eval(coeffs, mid)
        if fm == 0:
            return DyadicInterval(mid, mid, iv.precision)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return DyadicInterval(lo, hi, iv.precision)


def isolate_roots(polynomial: MultiPoly, box: DyadicInterval,
                  variable: str | None = None) -> RootIsolation:
    """Isolate every distinct real root of ``polynomial`` inside the closed box.

    The squarefree part is used internally, so multiple roots are reported
    once.  Raises ZeroPolynomial for the zero polynomial.
    """
    if polynomial.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if variable is None:
        used = polynomial.variables()
        if len(used) != 1:
            raise ValueError(f"polynomial must be univariate, has variables {sorted(used)}")
        variable = used.pop()
    coeffs = squarefree_part(polynomial.univariate(variable))
    found: list = []
    if len(coeffs) <= 1:
        return RootIsolation(polynomial, variable, ())
    work = coeffs
    for endpoint in (box.lo, box.hi):
        if poly_eval(work, endpoint) == 0:
            found.append((endpoint, endpoint))
            work = _deflate(work, endpoint)
    if len(work) > 1 and box.lo < box.hi:
        _isolate_rec(work, sturm_chain(work), box.lo, box.hi, found)
    found.sort(key=lambda p: (p[0], p[1]))
    intervals = tuple(DyadicInterval(a, b, box.precision) for a, b in found)
    return RootIsolation(polynomial, variable, intervals)


def count_roots(polynomial: MultiPoly, box: DyadicInterval,
                variable: str | None = None) -> int:
    """Distinct real roots in the closed box (endpoint roots included)."""
    return len(isolate_roots(polynomial, box, variable))
