import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchcert.dyadic import (DEFAULT_PRECISION, DivisionByZeroInterval,
                              DyadicInterval, NegativeSqrtDomain,
                              fraction_to_decimal, fraction_to_decimal_fixed,
                              interval_op)

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


def make(value, precision=128):
    return DyadicInterval.from_fraction(value, precision)


class TestContainment:
    def test_fuzz_rational_pairs(self):
        # containment of the exact rational result, 1e4 pairs per operation
        rng = random.Random(20260809)
        for _ in range(10_000):
            x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
            y = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
            X, Y = make(x, 64), make(y, 64)
            assert x + y in X.add(Y)
            assert x - y in X.sub(Y)
            assert x * y in X.mul(Y)
            if y != 0 and not (Y.lo <= 0 <= Y.hi):
                assert x / y in X.div(Y)

    @given(fractions, fractions)
    def test_add_mul_containment(self, x, y):
        assert x + y in make(x).add(make(y))
        assert x * y in make(x).mul(make(y))

    @given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**4))
    def test_sqrt_inverse(self, x):
        enc = make(x).sqrt()
        assert enc.lo * enc.lo <= x <= enc.hi * enc.hi

    @given(st.fractions(min_value=-10**5, max_value=10**5, max_denominator=10**4))
    def test_cbrt_inverse(self, x):
        enc = make(x).cbrt()
        assert enc.lo**3 <= x <= enc.hi**3


class TestExamples:
    def test_sqrt_33(self):
        enc = interval_op("sqrt", (make(33, 64),), 64)
        assert Fraction("5.74456264") <= enc.lo
        assert enc.hi <= Fraction("5.74456266")
        assert enc.lo**2 <= 33 <= enc.hi**2

    def test_mul_annihilator(self):
        zero = make(0)
        x = DyadicInterval(Fraction(-7), Fraction(13), 64)
        out = interval_op("mul", (zero, x), 64)
        assert out.lo == 0 and out.hi == 0

    def test_cbrt_first_recurrence_inner_value(self):
        enc = interval_op("cbrt", (make(Fraction("0.08751113"), 64),), 64)
        assert Fraction("0.44396") < enc.lo and enc.hi < Fraction("0.44398")


class TestWidthAndPrecision:
    def test_point_width_bound(self):
        # width <= 2^(3-p) * max(1, |result|) for point inputs
        for p in (24, 53, 64, 128):
            for val in (Fraction(1, 3), Fraction(22, 7), Fraction(-1001, 13)):
                x, y = make(val, p), make(val + 1, p)
                for op in ("add", "sub", "mul", "div"):
                    out = interval_op(op, (x, y), p)
                    bound = Fraction(2) ** (3 - p) * max(
                        1, abs(out.lo), abs(out.hi))
                    assert out.width <= bound

    def test_sqrt_width_monotone_in_precision(self):
        x = DyadicInterval(Fraction(2), Fraction(3), 256)
        widths = [x.sqrt(p).width for p in (16, 24, 32, 64, 128)]
        assert all(w1 >= w2 for w1, w2 in zip(widths, widths[1:]))

    def test_cbrt_width_monotone_in_precision(self):
        x = DyadicInterval(Fraction(5), Fraction(5), 256)
        widths = [x.cbrt(p).width for p in (16, 24, 32, 64, 128)]
        assert all(w1 >= w2 for w1, w2 in zip(widths, widths[1:]))


class TestStructure:
    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            DyadicInterval(Fraction(2), Fraction(1))

    def test_non_dyadic_endpoint_rejected(self):
        with pytest.raises(ValueError):
            DyadicInterval(Fraction(1, 3), Fraction(1))

    def test_from_fraction_rounds_outward(self):
        enc = make(Fraction(1, 3), 32)
        assert enc.lo < Fraction(1, 3) < enc.hi

    def test_division_by_zero_interval(self):
        with pytest.raises(DivisionByZeroInterval):
            make(1).div(DyadicInterval(Fraction(-1), Fraction(1)))

    def test_negative_sqrt(self):
        with pytest.raises(NegativeSqrtDomain):
            DyadicInterval(Fraction(-1), Fraction(4)).sqrt()

    def test_cbrt_negative_allowed(self):
        enc = make(-8).cbrt()
        assert -2 in enc

    def test_ordering_helpers(self):
        a = DyadicInterval(Fraction(1), Fraction(2))
        b = DyadicInterval(Fraction(3), Fraction(4))
        assert a.strictly_less(b) and b.strictly_greater(a)
        assert not a.strictly_less(DyadicInterval(Fraction(2), Fraction(3)))


class TestDecimalRendering:
    def test_exact_decimal(self):
        assert fraction_to_decimal(Fraction(3, 4)) == "0.75"
        assert fraction_to_decimal(Fraction(-5, 8)) == "-0.625"
        assert fraction_to_decimal(Fraction(7)) == "7"

    def test_exact_rejects_non_dyadic(self):
        with pytest.raises(ValueError):
            fraction_to_decimal(Fraction(1, 3))

    def test_fixed_rounding_half_even(self):
        assert fraction_to_decimal_fixed(Fraction(1, 3), 4) == "0.3333"
        assert fraction_to_decimal_fixed(Fraction(25, 1000), 2) == "0.02"
        assert fraction_to_decimal_fixed(Fraction(35, 1000), 2) == "0.04"
