from fractions import Fraction

import pytest

from pinchcert.constants import (NonPositiveDiscriminant, by_key, catalog,
                                 derive_refined_quadratic,
                                 refined_quadratic_poly)
from pinchcert.dyadic import DyadicInterval
from pinchcert.surd import QuadraticSurd

TOL = Fraction(1, 10**5)

REQUIRED_KEYS = {
    "t_quad_root_low", "surd_gap", "t_465_low", "corr_465", "slope_316",
    "offset_316", "a_seed", "a7_bound", "t_star", "root_high", "quad_lead",
    "corr_refined", "slope_refined", "offset_refined", "z_formula",
}


class TestCatalog:
    @pytest.mark.parametrize("precision", [64, 128])
    def test_required_entries_present(self, precision):
        keys = {e.key for e in catalog(precision)}
        assert REQUIRED_KEYS <= keys

    @pytest.mark.parametrize("precision", [64, 128])
    def test_printed_decimals_match_to_1e5(self, precision):
        for entry in catalog(precision):
            if entry.paper_decimal is None:
                continue
            assert abs(entry.enclosure.midpoint - entry.paper_decimal) <= TOL, entry.key

    @pytest.mark.parametrize("precision", [64, 128])
    def test_exact_closed_forms_contained(self, precision):
        for entry in catalog(precision):
            cf = entry.closed_form
            if isinstance(cf, QuadraticSurd):
                assert (cf - entry.enclosure.lo).sign() >= 0, entry.key
                assert (QuadraticSurd.make(entry.enclosure.hi) - cf).sign() >= 0, entry.key
            elif isinstance(cf, Fraction):
                assert entry.enclosure.contains(cf), entry.key

    def test_slope_316_window(self):
        enc = by_key("slope_316").enclosure
        assert Fraction("1.820482") < enc.lo and enc.hi < Fraction("1.820483")

    def test_offset_316_window(self):
        enc = by_key("offset_316").enclosure
        assert Fraction("0.684881") < enc.lo and enc.hi < Fraction("0.684882")

    def test_a_seed_exact(self):
        entry = by_key("a_seed")
        assert entry.enclosure.is_point() and entry.enclosure.lo == 2

    def test_iteration_derived_marked(self):
        for key in ("a7_bound", "t_star", "corr_refined", "slope_refined"):
            assert not by_key(key).is_exact


class TestRefinedQuadratic:
    def test_at_published_coefficient(self):
        rq = derive_refined_quadratic(Fraction("1.878415"))
        assert Fraction("2.834850") <= rq.lead.lo and rq.lead.hi <= Fraction("2.834852")
        assert rq.root_low.lo > Fraction("0.452114")
        assert rq.root_low.hi < Fraction("0.452116")
        # oracle root: 1.26875672...; within 1e-5 of the printed 1.26876
        assert rq.root_high.lo > Fraction("1.268756")
        assert rq.root_high.hi < Fraction("1.268758")
        assert abs(rq.root_high.midpoint - Fraction("1.26876")) < Fraction(1, 10**5)
        assert Fraction("0.390585") < rq.corr.lo and rq.corr.hi < Fraction("0.390587")
        assert len(rq.isolation) == 2

    def test_seed_coefficient_recovers_first_pass_root(self):
        # at a = 2 the family member is 9 times the seed quadratic, so its
        # smaller root is exactly (45 - sqrt(465))/52 = 0.4506950...
        rq = derive_refined_quadratic(Fraction(2))
        seed_root = QuadraticSurd.make(Fraction(45, 52), Fraction(-1, 52), 465)
        assert (seed_root - rq.root_low.lo).sign() >= 0
        assert (QuadraticSurd.make(rq.root_low.hi) - seed_root).sign() >= 0
        assert rq.lead.contains(2 + Fraction(8, 9))
        assert rq.lead.width < Fraction(1, 2**100)
        nine_times = refined_quadratic_poly(Fraction(2)) * 9
        t = nine_times  # 26t^2 - 45t + 15 expanded by 9
        from pinchcert.poly import MultiPoly
        tv = MultiPoly.var("t")
        assert (t - (26 * tv**2 - 45 * tv + 15)).is_zero()

    def test_monotone_decreasing_in_coefficient(self):
        roots = [derive_refined_quadratic(Fraction(a)).root_low
                 for a in (Fraction("1.8"), Fraction("1.878415"), Fraction(2))]
        assert roots[0].strictly_greater(roots[1])
        assert roots[1].strictly_greater(roots[2])
        # frozen oracle values (quadratic formula at each coefficient)
        assert abs(roots[0].midpoint - Fraction("0.4530818")) < Fraction(1, 10**6)
        assert abs(roots[2].midpoint - Fraction("0.4506950")) < Fraction(1, 10**6)
        highs = [derive_refined_quadratic(Fraction(a)).root_high
                 for a in (Fraction("1.8"), Fraction(2))]
        assert highs[0].strictly_less(highs[1])

    def test_rejects_nonpositive_coefficient(self):
        with pytest.raises(ValueError):
            derive_refined_quadratic(Fraction(-1))

    def test_uncertifiable_discriminant(self):
        # an absurdly wide enclosure defeats the interval discriminant
        wide = DyadicInterval(Fraction(1, 1024), Fraction(4096), 64)
        with pytest.raises(NonPositiveDiscriminant):
            derive_refined_quadratic(wide)

    def test_slope_offset_consistency(self):
        rq = derive_refined_quadratic(Fraction("1.878415"))
        one_minus = DyadicInterval.from_fraction(1).sub(rq.root_low)
        prod = rq.slope.mul(one_minus)
        assert prod.contains(Fraction(1))
        prod2 = rq.offset.mul(one_minus)
        assert prod2.lo <= rq.corr.hi and rq.corr.lo <= prod2.hi
