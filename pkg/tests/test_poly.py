from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchcert.poly import MultiPoly, PolyFraction, reduce_linear

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
points = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def v(name):
    return MultiPoly.var(name)


@st.composite
def small_polys(draw):
    t, S, A = v("t"), v("S"), v("A")
    basis = [MultiPoly.const(1), t, S, A, t * S, t * t, S * A]
    return sum((draw(coeffs) * b for b in basis), MultiPoly.zero())


class TestRingLaws:
    @given(small_polys(), small_polys(), points, points, points)
    def test_evaluation_homomorphism(self, p, q, x, y, z):
        pt = {"t": x, "S": y, "A": z}
        assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
        assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
        assert (p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt)

    @given(small_polys())
    def test_additive_inverse(self, p):
        assert (p - p).is_zero()

    def test_structural_equality_no_zero_terms(self):
        t = v("t")
        p = t * t - t * t + 3 * t
        assert p == 3 * t
        assert all(c != 0 for c in p.terms.values())

    def test_power(self):
        t = v("t")
        assert (1 + t) ** 3 == 1 + 3 * t + 3 * t * t + t**3


class TestStructure:
    def test_univariate_extraction(self):
        t = v("t")
        p = 4 * t**2 - 9 * t + 3
        assert p.univariate("t") == [Fraction(3), Fraction(-9), Fraction(4)]

    def test_univariate_rejects_extra_variables(self):
        with pytest.raises(ValueError):
            (v("t") + v("S")).univariate("t")

    def test_coefficients_by(self):
        t, S = v("t"), v("S")
        p = t**2 * S + 2 * t**2 + S
        by = p.coefficients_by("t")
        assert by[2] == S + 2
        assert by[0] == S

    def test_substitute(self):
        t, S, n = v("t"), v("S"), v("n")
        p = n * S - (1 - t) * S * S
        reduced = p.substitute({"n": (1 - t) * S})
        assert reduced.is_zero()

    def test_substitute_matches_sympy(self):
        import sympy as sp
        t, S = v("t"), v("S")
        p = (2 + 3 * t) ** 2 * S - 5 * t * S**2
        q = p.substitute({"t": 1 - 2 * S})
        ts, Ss = sp.symbols("t S")
        ps = (2 + 3 * ts) ** 2 * Ss - 5 * ts * Ss**2
        qs = sp.expand(ps.subs(ts, 1 - 2 * Ss))
        for val in (Fraction(1, 3), Fraction(-2, 7)):
            got = q.evaluate({"S": val})
            want = qs.subs(Ss, sp.Rational(val.numerator, val.denominator))
            assert got == Fraction(str(sp.nsimplify(want)))


class TestReduceLinear:
    @given(small_polys())
    def test_certificate_identity(self, p):
        # p == reduced + quotient * (n - value) must hold exactly
        n = v("n")
        value = (1 - v("t")) * v("S")
        p_with_n = p + n * v("t") + n**2
        reduced, quotient = reduce_linear(p_with_n, "n", value)
        recomposed = reduced + quotient * (n - value)
        assert (recomposed - p_with_n).is_zero()
        assert "n" not in reduced.variables()


class TestPolyFraction:
    @given(small_polys(), points, points, points)
    def test_fraction_arithmetic(self, p, x, y, z):
        t = v("t")
        pf = PolyFraction(p, 1 - t) + PolyFraction(1, 2 * (1 - t))
        pt = {"t": x, "S": y, "A": z}
        if x == 1:
            return
        want = p.evaluate(pt) / (1 - x) + Fraction(1, 2) / (1 - x)
        assert pf.evaluate(pt) == want

    def test_zero_detection_cross_multiplied(self):
        t, S = v("t"), v("S")
        a = PolyFraction(t * S, 1 - t)
        b = PolyFraction(t * S * (1 + t), (1 - t) * (1 + t))
        assert (a - b).is_zero()

    def test_division_by_zero_fraction(self):
        with pytest.raises(ZeroDivisionError):
            PolyFraction(1) / PolyFraction(0)

    def test_substitute_fraction_values(self):
        t, S, n = v("t"), v("S"), v("n")
        pf = PolyFraction(n * S)
        out = pf.substitute({"n": PolyFraction(t, 1 - t)})
        assert out == PolyFraction(t * S, 1 - t)
