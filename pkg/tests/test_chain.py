from fractions import Fraction

import pytest

from pinchcert.chain import (BilinearTable, ResidualNonzero, STEP_ORDER,
                             certify_nonneg_on_box, default_axioms,
                             expand_quadratic_form, master_conclusion,
                             printed_lower_bound, subdivide_nonneg,
                             verify_all, verify_step)
from pinchcert.chain import Axiom
from pinchcert.poly import MultiPoly, PolyFraction


def v(name):
    return MultiPoly.var(name)


class TestFullLedger:
    def test_all_steps_verified(self):
        report = verify_all()
        assert report.all_verified
        assert [r.name for r in report.results] == list(STEP_ORDER)
        assert report.counts == {"verified": 11}

    def test_empty_ledger(self):
        report = verify_all(steps=[])
        assert report.results == ()
        assert report.all_verified  # vacuously

    def test_report_serialization(self):
        obj = verify_all().to_obj()
        assert len(obj) == 11
        for entry in obj:
            assert set(entry) >= {"step", "anchor", "kind", "verdict"}
            assert entry["verdict"] == "verified"

    def test_failed_step_short_circuits_dependents(self):
        report = verify_all(alpha_shift=Fraction(1, 100))
        verdicts = {r.name: r.verdict for r in report.results}
        assert verdicts["S8"] == "failed"
        assert verdicts["S9"] == "skipped"
        assert verdicts["S10"] == "skipped"
        assert verdicts["S11"] == "skipped"
        # steps not downstream of the master weight remain verified
        for name in ("S1", "S2", "S3", "S4", "S5", "S6", "S7"):
            assert verdicts[name] == "verified"


class TestQuadraticFormExpansion:
    def test_zero_weights_reduce_to_trivial_bound(self):
        out = expand_quadratic_form(alpha=0, beta=0, gamma=0)
        assert out.is_zero()

    def test_reduces_exactly_to_printed_bound(self):
        alpha = PolyFraction(v("alpha"))
        target = printed_lower_bound(alpha)
        out = expand_quadratic_form(alpha=alpha, match=target)
        reduced = out.substitute({"n": PolyFraction((1 - v("t")) * v("S"))})
        assert (reduced - target).is_zero()

    def test_perturbed_u_entry_raises_with_residual(self):
        table = BilinearTable.default().perturbed("hh", 1)
        alpha = PolyFraction(v("alpha"))
        with pytest.raises(ResidualNonzero) as exc:
            expand_quadratic_form(alpha=alpha, table=table,
                                  match=printed_lower_bound(alpha))
        # the injected unit enters through the weight beta = C/S^2 twice
        residual = exc.value.residual
        want = PolyFraction(-2 * v("C"), v("S") ** 2)
        assert (residual - want).is_zero()


class TestPerturbationSensitivity:
    def test_alpha_shift_breaks_master_cancellation(self):
        res = verify_step("S8", alpha_shift=Fraction(1, 100))
        assert res.verdict == "failed"
        assert res.residual is not None

    def test_every_table_injection_breaks_the_expansion(self):
        base = BilinearTable.default()
        keys = ["ah", "hh", "hd",
                ("a", "a"), ("h", "h"), ("d", "d"),
                ("a", "h"), ("a", "d"), ("h", "d")]
        for key in keys:
            res = verify_step("S2", table=base.perturbed(key, 1))
            assert res.verdict == "failed", key
            res_neg = verify_step("S2", table=base.perturbed(key, -1))
            assert res_neg.verdict == "failed", key

    def test_no_false_positives(self):
        assert verify_step("S2").verdict == "verified"
        assert verify_step("S8").verdict == "verified"

    def test_weakened_cauchy_schwarz_breaks_s7(self):
        ax = default_axioms()
        A, B, C, t, S = (v(x) for x in ("A", "B", "C", "t", "S"))
        weakened = Fraction(1, 4) * (A + 2 * B) * t * S**2 - C**2
        ax["AX6"] = Axiom("AX6", "ge", weakened, ax["AX6"].anchor)
        assert verify_step("S7", axioms=ax).verdict == "failed"
        report = verify_all(axioms=ax)
        verdicts = {r.name: r.verdict for r in report.results}
        assert verdicts["S7"] == "failed"
        assert verdicts["S8"] == "failed"

    def test_table_injection_propagates_to_master_step(self):
        table = BilinearTable.default().perturbed("ah", 1)
        assert verify_step("S8", table=table).verdict == "failed"


class TestIndependentRederivation:
    def test_master_cancellation_against_sympy(self):
        # naive second representation: expand everything in sympy and check
        # the master combination reduces to the printed conclusion
        import sympy as sp
        t, S, A, B, C, y, f, F3SQ, USQ, F4 = sp.symbols(
            "t S A B C y f F3SQ USQ F4")
        alpha = -(3 - 4 * t) / 2
        z = (17 * t**2 - 33 * t + 24) / (t * (1 - t))
        M = (8 * t**2 - 15 * t + 9) / (1 - t)
        rhs_printed = (2 * alpha * (2 * B + A - 2 * y * C - t / (1 - t) * S**2)
                       - 2 * alpha**2 * S * f + C**2 / S**2
                       + t / (2 * (1 - t)) * t * S**2)
        s5 = (t * (2 * t - 1) * S**3 - USQ - sp.Rational(3, 2) * t * S**2
              + sp.Rational(3, 2) * (A - 2 * B))
        ax7 = USQ - rhs_printed
        s6 = t * F3SQ + t * S**2 - (2 - t) * A - (1 + 2 * t) * B
        ax6 = sp.Rational(1, 3) * (A + 2 * B) * t * S**2 - C**2
        defy = F3SQ - S**2 * y**2
        ax3lin = t * S**2 * y - 2 * C
        ax3sq = t**2 * S**2 * F3SQ - 4 * C**2
        ax4split = (1 - t) * S * f + t * S**2 - (1 - t) * (A - 2 * B)
        conclusion = (t * (2 * t - 1) * S**3
                      - (4 * t**2 - 9 * t + 3) / (3 * (1 - t)) * (A - B)
                      + 2 * t**2 / (1 - t) * S**2)
        combo = (s5 + ax7 + M * s6 + z / S**2 * ax6
                 + 2 * alpha * t * defy + 2 * alpha * y * ax3lin
                 - (1 + z) / (4 * S**2) * ax3sq
                 - 2 * alpha**2 / (1 - t) * ax4split)
        assert sp.simplify(conclusion - combo) == 0

    def test_master_residual_vanishes_at_random_rational_points(self):
        # the step residual is the zero polynomial, so the conclusion equals
        # the hypothesis combination at arbitrary evaluation points
        report = verify_all()
        assert report.result("S8").verdict == "verified"
        concl = master_conclusion()
        pts = {"t": Fraction(1, 2), "S": Fraction(37, 5), "A": Fraction(3, 7),
               "B": Fraction(-1, 9)}
        val = concl.evaluate(pts)
        # independent arithmetic evaluation of the printed conclusion
        t, S, A, B = (pts[k] for k in ("t", "S", "A", "B"))
        want = (t * (2 * t - 1) * S**3
                - Fraction(4 * t**2 - 9 * t + 3, 1) / (3 * (1 - t)) * (A - B)
                + 2 * t**2 / (1 - t) * S**2)
        assert val == want

    def test_master_conclusion_negative_gradient_weight_at_half(self):
        # at t = 1/2 the gradient-difference coefficient is -1/3, so the
        # branch split below (9 - sqrt(33))/8 is genuinely needed
        coeff = PolyFraction(4 * v("t") ** 2 - 9 * v("t") + 3, 3 * (1 - v("t")))
        assert coeff.evaluate({"t": Fraction(1, 2)}) == Fraction(-1, 3)


class TestNonnegCertifier:
    def test_positive_quadratics_certify(self):
        assert subdivide_nonneg([Fraction(9), Fraction(-15), Fraction(8)]) is True
        assert subdivide_nonneg([Fraction(24), Fraction(-33), Fraction(17)]) is True

    def test_negative_quadratic_rejected(self):
        # 4t^2 - 9t + 3 dips negative inside [0, 1]
        assert subdivide_nonneg([Fraction(3), Fraction(-9), Fraction(4)]) is False

    def test_box_monomial_and_fraction_certificates(self):
        t, S = v("t"), v("S")
        assert certify_nonneg_on_box(PolyFraction(t * S**2)) == "certified"
        assert certify_nonneg_on_box(
            PolyFraction(8 * t**2 - 15 * t + 9, 1 - t)) == "certified"
        assert certify_nonneg_on_box(PolyFraction(-t)) == "negative"
        # sign-indefinite variables cannot be certified
        assert certify_nonneg_on_box(PolyFraction(v("B"))) == "undecided"


class TestBranchSteps:
    def test_s9_details_include_the_exact_comparison(self):
        res = verify_step("S9")
        assert res.verdict == "verified"
        assert any("5/12" in d for d in res.detail)

    def test_s9_at_larger_dimension(self):
        assert verify_step("S9", n_min=11).verdict == "verified"

    def test_s10_closed_forms(self):
        res = verify_step("S10")
        assert res.verdict == "verified"
        assert any("slope" in d for d in res.detail)

    def test_s11_reports_enclosures(self):
        res = verify_step("S11")
        assert res.verdict == "verified"
        assert any("lower root" in d for d in res.detail)

    def test_s11_with_solver_output(self):
        from pinchcert.bootstrap import iterate
        a7 = iterate(Fraction("0.452115"), 6, 7).last
        assert verify_step("S11", a7=a7).verdict == "verified"
