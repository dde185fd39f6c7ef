"""Registry of every printed constant in the pinching derivation.

Constants with an exact closed form are stored as quadratic surds or
rationals and their enclosures are recomputed from the closed form at any
requested precision.  Constants that only exist as printed decimals of the
bootstrap pipeline (the split point 0.452115, the contraction output
1.878415, and the derived quadratic data) are marked ``iteration-derived``;
their registry enclosures wrap the printed decimal, and the bootstrap solver
is the authority that cross-checks them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import DEFAULT_PRECISION, DyadicInterval, _as_fraction
from .poly import MultiPoly
from .roots import RootIsolation, isolate_roots
from .surd import QuadraticSurd

ITERATION_DERIVED = "iteration-derived"


class NonPositiveDiscriminant(ValueError):
    """The refined quadratic cannot be certified to have two real roots."""


@dataclass(frozen=True)
class NamedConstant:
    key: str
    closed_form: object  # QuadraticSurd | Fraction | str marker
    closed_form_text: str
    enclosure: DyadicInterval
    paper_decimal: Fraction | None
    anchor: str

    @property
    def is_exact(self) -> bool:
        return not isinstance(self.closed_form, str)


def _surd(a, b, d) -> QuadraticSurd:
    return QuadraticSurd.make(Fraction(a), Fraction(b), d)


# Closed forms used across the pipeline (also consumed by the chain verifier).
ROOT_LOW_33 = _surd(Fraction(9, 8), Fraction(-1, 8), 33)       # smaller root of 4t^2-9t+3
ROOT_HIGH_33 = _surd(Fraction(9, 8), Fraction(1, 8), 33)       # larger root of 4t^2-9t+3
SURD_GAP = _surd(Fraction(-3, 2), Fraction(1, 2), 33)          # 2*r/(1-r) at the lower split
ROOT_LOW_465 = _surd(Fraction(45, 52), Fraction(-1, 52), 465)  # smaller root of 26t^2-45t+15
ROOT_HIGH_465 = _surd(Fraction(45, 52), Fraction(1, 52), 465)
CORR_465 = _surd(Fraction(-9, 26), Fraction(27, 806), 465)     # (9/26)(3*sqrt465/31 - 1)
SLOPE_316 = _surd(Fraction(-7, 8), Fraction(1, 8), 465)        # (sqrt465 - 7)/8
OFFSET_316 = _surd(Fraction(9, 4), Fraction(-9, 124), 465)     # (9/4)(1 - sqrt465/31)

T_STAR_DECIMAL = Fraction("0.452115")
A7_DECIMAL = Fraction("1.878415")


def _exact_entry(key, surd: QuadraticSurd, text, decimal, anchor, precision) -> NamedConstant:
    return NamedConstant(key, surd, text, surd.enclosure(precision),
                         None if decimal is None else Fraction(decimal), anchor)


def _derived_entry(key, decimal, anchor, precision) -> NamedConstant:
    dec = Fraction(decimal)
    return NamedConstant(key, ITERATION_DERIVED, ITERATION_DERIVED,
                         DyadicInterval.from_fraction(dec, precision), dec, anchor)


def catalog(precision: int = DEFAULT_PRECISION) -> tuple:
    """All printed constants with certified enclosures at the given precision."""
    t = MultiPoly.var("t")
    z_num = 17 * t**2 - 33 * t + 24
    # enclosure of the weight (17t^2-33t+24)/(1-t) at the canonical split point
    z_at_star = (DyadicInterval.from_fraction(z_num.evaluate({"t": T_STAR_DECIMAL}), precision)
                 .div(DyadicInterval.from_fraction(1 - T_STAR_DECIMAL, precision)))

    entries = (
        _exact_entry("t_quad_root_low", ROOT_LOW_33, "(9 - sqrt(33))/8",
                     "0.40693", "lower split threshold (first branch quadratic)", precision),
        _exact_entry("surd_gap", SURD_GAP, "(sqrt(33) - 3)/2",
                     None, "gap term in the contradiction branch", precision),
        _exact_entry("t_465_low", ROOT_LOW_465, "(45 - sqrt(465))/52",
                     "0.450694", "first-pass split point (seed quadratic root)", precision),
        _exact_entry("corr_465", CORR_465, "(9/26)*(3*sqrt(465)/31 - 1)",
                     None, "first-pass 1/S correction", precision),
        _exact_entry("slope_316", SLOPE_316, "(sqrt(465) - 7)/8",
                     "1.82048", "first-pass linear bound slope", precision),
        _exact_entry("offset_316", OFFSET_316, "(9/4)*(1 - sqrt(465)/31)",
                     "0.684881", "first-pass linear bound offset", precision),
        NamedConstant("a_seed", Fraction(2), "2",
                      DyadicInterval.from_fraction(2, precision), Fraction(2),
                      "bootstrap recurrence seed"),
        _derived_entry("a7_bound", A7_DECIMAL, "bootstrap output after six refinements",
                       precision),
        _derived_entry("t_star", T_STAR_DECIMAL, "self-consistent refined split point",
                       precision),
        _derived_entry("root_high", "1.26876", "upper root of the refined quadratic",
                       precision),
        _derived_entry("quad_lead", "2.83485", "leading coefficient of the refined quadratic",
                       precision),
        _derived_entry("corr_refined", "0.390586", "refined 1/S correction", precision),
        _derived_entry("slope_refined", "1.8252", "refined linear bound slope", precision),
        _derived_entry("offset_refined", "0.712898", "refined linear bound offset", precision),
        NamedConstant("z_formula", "(17*t^2 - 33*t + 24)/(1 - t)",
                      "(17*t^2 - 33*t + 24)/(1 - t)", z_at_star, None,
                      "auxiliary weight in the master combination (value at t_star)"),
    )
    return entries


def by_key(key: str, precision: int = DEFAULT_PRECISION) -> NamedConstant:
    for entry in catalog(precision):
        if entry.key == key:
            return entry
    raise KeyError(key)


@dataclass(frozen=True)
class RefinedQuadratic:
    """Interval data for the self-improvement quadratic at a given bootstrap output.

    The quadratic is (2 + 4a/9)t^2 - (3 + a)t + (1 + a/3), the form obtained
    by clearing (1-t) from the post-bootstrap comparison; ``corr`` is the
    1/S correction -2*r1/(lead*(r1 - r2)).
    """

    a7: DyadicInterval
    lead: DyadicInterval
    linear: DyadicInterval
    constant: DyadicInterval
    root_low: DyadicInterval
    root_high: DyadicInterval
    corr: DyadicInterval
    slope: DyadicInterval   # 1/(1 - root_low)
    offset: DyadicInterval  # corr/(1 - root_low)
    isolation: RootIsolation | None

    @property
    def roots(self) -> tuple:
        return (self.root_low, self.root_high)


def refined_quadratic_poly(a7: Fraction) -> MultiPoly:
    """Exact quadratic in t for a rational bootstrap coefficient."""
    t = MultiPoly.var("t")
    a = _as_fraction(a7)
    return (2 + Fraction(4, 9) * a) * t**2 - (3 + a) * t + MultiPoly.const(1 + a / 3)


def derive_refined_quadratic(a7,
                             precision: int = DEFAULT_PRECISION) -> RefinedQuadratic:
    """Enclose the refined quadratic's coefficients, roots and 1/S correction.

    ``a7`` may be an enclosure or an exact rational; for exact inputs the
    roots are additionally isolated by Sturm sequences on the exact
    polynomial.  Raises NonPositiveDiscriminant when the discriminant
    enclosure fails to certify two real roots (the signal for a wrong
    bootstrap output).
    """
    a7_exact = None
    if isinstance(a7, DyadicInterval):
        if a7.is_point():
            a7_exact = a7.lo
    else:
        a7_exact = _as_fraction(a7)
        a7 = DyadicInterval.from_fraction(a7_exact, precision)
    if not a7.strictly_positive():
        raise ValueError("bootstrap coefficient enclosure must be positive")
    p = precision
    lead = a7.mul(Fraction(4, 9), p).add(2, p)
    linear = -(a7.add(3, p))
    constant = a7.div(DyadicInterval.from_fraction(3, p), p).add(1, p)
    disc = linear.mul(linear, p).sub(lead.mul(constant, p).mul(4, p), p)
    if not disc.strictly_positive():
        raise NonPositiveDiscriminant(
            f"discriminant enclosure [{disc.lo}, {disc.hi}] is not certified positive")
    sq = disc.sqrt(p)
    two_lead = lead.mul(2, p)
    minus_lin = -linear
    root_low = minus_lin.sub(sq, p).div(two_lead, p)
    root_high = minus_lin.add(sq, p).div(two_lead, p)
    corr = -(root_low.mul(2, p)).div(lead.mul(root_low.sub(root_high, p), p), p)
    one_minus = DyadicInterval.from_fraction(1, p).sub(root_low, p)
    slope = DyadicInterval.from_fraction(1, p).div(one_minus, p)
    offset = corr.div(one_minus, p)

    isolation = None
    if a7_exact is not None:
        poly = refined_quadratic_poly(a7_exact)
        box = DyadicInterval(Fraction(0), Fraction(2), p)
        isolation = isolate_roots(poly, box).refined(Fraction(1, 10**9))
    return RefinedQuadratic(a7, lead, linear, constant, root_low, root_high,
                            corr, slope, offset, isolation)
