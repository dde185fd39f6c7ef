"""Ledger verification of the pinching-theorem inequality chain.

The proof is represented as eleven ordered steps (S1..S11).  Identity steps
carry an explicit multiplier certificate: the conclusion, cleared by
certified-positive factors, minus the multiplier combination of its
hypotheses must be the *exact* zero polynomial.  Implication steps
additionally require every multiplier attached to an inequality hypothesis
to be certified nonnegative on the domain box; multipliers that are
polynomials in the split ratio t alone are certified by exhaustive interval
evaluation on a dyadic subdivision of [0, 1] (adaptive depth <= 24), and a
failure to certify is reported as ``undecided`` rather than ``failed``.

Branch arguments (S9, S10) are verified with exact quadratic-surd
arithmetic: every comparison such as 5/12 > (9 - sqrt(33))/8 is an integer
computation, with no rounding anywhere.

Axiom inventory (the domain box AX9 also includes A - B >= 0, which has the
closed form (1/6) * sum of squared eigenvalue differences weighted by the
gradient tensor and is cross-checked numerically by the falsifier):

  AX1  n = (1 - t) S                      (definition of the split ratio)
  AX2  n S f = n S f4 - n f3^2 - S^3      (definition of the defect f)
  AX3  t^2 S^2 F3SQ = 4 C^2               (squared constancy relation, from S3)
  AX4  S f4 - f3^2 - S^2 = A - 2B         (second-derivative defect identity)
  AX5  t S f4 >= 2A + B                   (maximum-principle consequence)
  AX6  C^2 <= (1/3)(A + 2B) t S^2         (Cauchy-Schwarz bound)
  AX7  quadratic-form inequality          (instantiated by S2 per weight alpha)
  AX8  A - B <= (2/3) t S^3               (imported seed bound)
  AX9  0 < t < 1, S >= n >= 5, A >= 0, A + 2B >= 0, A - B >= 0, F3SQ >= 0, f >= 0
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .constants import (ROOT_HIGH_33, ROOT_HIGH_465, ROOT_LOW_33, ROOT_LOW_465,
                        CORR_465, OFFSET_316, SLOPE_316, SURD_GAP, A7_DECIMAL,
                        NonPositiveDiscriminant, derive_refined_quadratic)
from .dyadic import DEFAULT_PRECISION, DyadicInterval, _as_fraction
from .poly import MultiPoly, PolyFraction
from .surd import QuadraticSurd

_t = MultiPoly.var("t")
_S = MultiPoly.var("S")
_A = MultiPoly.var("A")
_B = MultiPoly.var("B")
_C = MultiPoly.var("C")
_F3SQ = MultiPoly.var("F3SQ")
_f = MultiPoly.var("f")
_y = MultiPoly.var("y")
_n = MultiPoly.var("n")
_a = MultiPoly.var("a")
_F4 = MultiPoly.var("F4")
_alpha = MultiPoly.var("alpha")
_USQ = MultiPoly.var("USQ")

_HALF = Fraction(1, 2)
_THIRD = Fraction(1, 3)

# Variables that are nonnegative on the domain box AX9.
_BOX_NONNEG_VARS = {"t", "S", "n", "A", "F3SQ", "f"}

STEP_ORDER = ("S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "S10", "S11")

STEP_DEPS = {
    "S1": (),
    "S2": ("S1",),
    "S3": (),
    "S4": (),
    "S5": (),
    "S6": (),
    "S7": ("S3", "S4", "S6"),
    "S8": ("S2", "S3", "S4", "S5", "S6"),
    "S9": ("S8",),
    "S10": ("S8", "S9"),
    "S11": ("S8", "S9", "S10"),
}

STEP_KINDS = {
    "S1": "identity", "S2": "identity", "S3": "identity", "S4": "identity",
    "S5": "identity", "S6": "implication", "S7": "implication",
    "S8": "implication", "S9": "implication", "S10": "implication",
    "S11": "implication",
}

STEP_ANCHORS = {
    "S1": "traceless square frame is f-normalized",
    "S2": "quadratic-form expansion matches the printed lower bound",
    "S3": "squared constancy relation for the cubic sum",
    "S4": "split form of the defect identity",
    "S5": "second-derivative norm bridge",
    "S6": "maximum-principle consequence in squared variables",
    "S7": "defect controlled by the gradient difference",
    "S8": "master cancellation",
    "S9": "branch contradiction at the lower split",
    "S10": "first-pass linear bound",
    "S11": "refined quadratic chain",
}


class ResidualNonzero(ValueError):
    """An expansion that must reduce exactly left a nonzero residual."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"nonzero residual: {residual}")


# --------------------------------------------------------------------------
# axioms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Axiom:
    name: str
    relation: str  # "eq" (== 0) or "ge" (>= 0)
    poly: MultiPoly
    anchor: str


def default_axioms() -> dict:
    ax = [
        Axiom("AX1", "eq", _n - (1 - _t) * _S,
              "definition of the split ratio"),
        Axiom("AX2", "eq", _n * _S * _f - _n * _S * _F4 + _n * _F3SQ + _S**3,
              "definition of the fourth-order defect (cleared by n)"),
        Axiom("DEF_Y", "eq", _F3SQ - _S**2 * _y**2,
              "square of the normalized cubic power sum"),
        Axiom("AX3_LIN", "eq", _t * _S**2 * _y - 2 * _C,
              "constancy of the cubic power sum at the limit point"),
        Axiom("AX3", "eq", _t**2 * _S**2 * _F3SQ - 4 * _C**2,
              "squared constancy relation (derived by S3)"),
        Axiom("AX4", "eq", _S * _F4 - _F3SQ - _S**2 - _A + 2 * _B,
              "second-derivative defect identity"),
        Axiom("AX4_SPLIT", "eq", (1 - _t) * _S * _f + _t * _S**2 - (1 - _t) * (_A - 2 * _B),
              "split form of the defect identity (derived by S4)"),
        Axiom("AX5", "ge", _t * _S * _F4 - 2 * _A - _B,
              "maximum-principle consequence at the limit point"),
        Axiom("AX6", "ge", _THIRD * (_A + 2 * _B) * _t * _S**2 - _C**2,
              "Cauchy-Schwarz bound on the weighted gradient sum"),
        Axiom("AX8", "ge", Fraction(2, 3) * _t * _S**3 - (_A - _B),
              "imported seed bound for the gradient difference"),
        Axiom("DEF_USQ", "eq",
              _USQ - (_S * (_S - _n) * (_S - 2 * _n - 3) + 3 * (_A - 2 * _B)
                      - Fraction(3, 2) * (_S * _F4 - _F3SQ - 2 * _S**2 + _n * _S)),
              "norm of the cyclic derivative average via the second-derivative norm"),
    ]
    return {a.name: a for a in ax}


# --------------------------------------------------------------------------
# nonnegativity certification on the domain box
# --------------------------------------------------------------------------

def _range_enclosure(coeffs, lo: Fraction, hi: Fraction) -> tuple:
    """Exact interval Horner evaluation of a t-polynomial on [lo, hi]."""
    L = H = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        cands = (L * lo, L * hi, H * lo, H * hi)
        L, H = min(cands) + c, max(cands) + c
    return L, H


def subdivide_nonneg(coeffs, lo=Fraction(0), hi=Fraction(1), depth: int = 24):
    """True if certified >= 0 on [lo, hi], False if certified negative
    somewhere, None if undecided at the depth cap."""
    coeffs = list(coeffs)
    if not coeffs:
        return True
    L, H = _range_enclosure(coeffs, lo, hi)
    if L >= 0:
        return True
    if H < 0:
        return False
    if depth <= 0:
        return None
    mid = (lo + hi) / 2
    left = subdivide_nonneg(coeffs, lo, mid, depth - 1)
    if left is False:
        return False
    right = subdivide_nonneg(coeffs, mid, hi, depth - 1)
    if right is False:
        return False
    if left is True and right is True:
        return True
    return None


def _poly_box_sign(poly: MultiPoly):
    """Certified sign of a polynomial on the domain box: '+', '-', '0' or None."""
    if poly.is_zero():
        return "0"
    mono = poly.monomial_gcd()
    from .poly import VARIABLES
    for i, e in enumerate(mono):
        if e and VARIABLES[i] not in _BOX_NONNEG_VARS:
            return None
    core = poly.divide_monomial(mono)
    vs = core.variables()
    if not vs:
        c = next(iter(core.terms.values()))
        return "+" if c > 0 else "-"
    if vs == {"t"}:
        coeffs = core.univariate("t")
        up = subdivide_nonneg(coeffs)
        if up is True:
            return "+"
        down = subdivide_nonneg([-c for c in coeffs])
        if down is True:
            return "-"
        return None
    return None


def certify_nonneg_on_box(pf: PolyFraction):
    """'certified' / 'undecided' / 'negative' verdict for a multiplier."""
    sn = _poly_box_sign(pf.num)
    if sn == "0":
        return "certified"
    sd = _poly_box_sign(pf.den)
    if sn is None or sd is None or sd == "0":
        return "undecided"
    return "certified" if sn == sd else "negative"


# --------------------------------------------------------------------------
# bilinear table and quadratic-form expansion
# --------------------------------------------------------------------------

_COMBOS = {
    "ah": (("a", "h"), ("h", "a")),
    "hh": (("h", "h"),),
    "hd": (("h", "d"), ("d", "h")),
}


def _pf(num, den=1) -> PolyFraction:
    return PolyFraction(num, den)


@dataclass(frozen=True)
class BilinearTable:
    """Inner products among the cyclic average u and the rank-one frames.

    ``u_rows`` stores the pairing of u against a single simple tensor
    (a (x) h, h (x) h, h (x) d).  u is symmetric under swapping its two index
    blocks, so the pairing against a swapped simple tensor is the same entry;
    the symmetrized frames therefore pick up a factor 2 (this is the factor
    required for the expansion to reduce exactly to the printed bound, and it
    is recorded here once and for all).  ``base`` stores the vector-level
    inner products; the pure-norm rows derived from them are cross-checked
    numerically by the falsifier.
    """

    u_rows: tuple  # ((key, PolyFraction), ...) for keys "ah", "hh", "hd"
    base: tuple    # ((pair, PolyFraction), ...) over {a, h, d}

    @classmethod
    def default(cls) -> "BilinearTable":
        u_rows = (
            ("ah", _pf(-_B - _HALF * _A + _y * _C) + _pf(_t * _S**2, 2 * (1 - _t))),
            ("hh", _pf(-_C)),
            ("hd", _pf(-_HALF * _t * _S**2)),
        )
        base = (
            (("a", "a"), _pf(_f)),
            (("h", "h"), _pf(_S)),
            (("d", "d"), _pf(_n)),
            (("a", "h"), _pf(0)),
            (("a", "d"), _pf(0)),
            (("h", "d"), _pf(0)),
        )
        return cls(u_rows, base)

    def _u_entry(self, key: str) -> PolyFraction:
        for k, v in self.u_rows:
            if k == key:
                return v
        raise KeyError(key)

    def _base_entry(self, x: str, w: str) -> PolyFraction:
        pair = tuple(sorted((x, w)))
        for k, v in self.base:
            if tuple(sorted(k)) == pair:
                return v
        raise KeyError(pair)

    def u_pair(self, combo: str) -> PolyFraction:
        """Pairing of u with a symmetrized frame.  By block-swap symmetry the
        pairing against the swapped simple tensor equals the stored entry, so
        the entry is counted once per simple tensor in the frame (twice for
        ah and hd, once for hh)."""
        entry = self._u_entry(combo)
        total = _pf(0)
        for _ in _COMBOS[combo]:
            total = total + entry
        return total

    def frame_inner(self, c1: str, c2: str) -> PolyFraction:
        total = _pf(0)
        for (x, y) in _COMBOS[c1]:
            for (w, z) in _COMBOS[c2]:
                total = total + self._base_entry(x, w) * self._base_entry(y, z)
        return total

    def perturbed(self, key, delta) -> "BilinearTable":
        """Return a copy with one entry shifted by an exact rational."""
        d = _as_fraction(delta)
        if isinstance(key, str):
            rows = tuple((k, v + _pf(MultiPoly.const(d)) if k == key else v)
                         for k, v in self.u_rows)
            if not any(k == key for k, _ in self.u_rows):
                raise KeyError(key)
            return replace(self, u_rows=rows)
        pair = tuple(sorted(key))
        found = False
        base = []
        for k, v in self.base:
            if tuple(sorted(k)) == pair:
                base.append((k, v + _pf(MultiPoly.const(d))))
                found = True
            else:
                base.append((k, v))
        if not found:
            raise KeyError(key)
        return replace(self, base=tuple(base))


def printed_lower_bound(alpha) -> PolyFraction:
    """The displayed lower bound for the squared cyclic average, as printed:
    2*alpha*(2B + A - 2yC - t/(1-t) S^2) - 2 alpha^2 S f + C^2/S^2 + t^2 S^2/(2(1-t))."""
    al = PolyFraction.lift(alpha)
    return (2 * al * (_pf(2 * _B + _A - 2 * _y * _C) - _pf(_t * _S**2, 1 - _t))
            - 2 * al**2 * _pf(_S * _f)
            + _pf(_C**2, _S**2)
            + _pf(_t**2 * _S**2, 2 * (1 - _t)))


def expand_quadratic_form(alpha=None, beta=None, gamma=None,
                          table: BilinearTable | None = None,
                          match: PolyFraction | None = None) -> PolyFraction:
    """Expand the nonnegative square of u + alpha*(a(x)h + h(x)a) +
    beta*h(x)h + gamma*(h(x)d + d(x)h) and return the certified lower bound R
    with USQ >= R.

    With the default weights beta = C/S^2 and gamma = t/(2(1-t)) and after
    reducing the dimension via n = (1-t)S, R must coincide exactly with
    ``printed_lower_bound``; pass ``match`` to enforce this (raises
    ResidualNonzero otherwise).
    """
    table = table or BilinearTable.default()
    al = PolyFraction.lift(alpha if alpha is not None else _alpha)
    be = PolyFraction.lift(beta) if beta is not None else _pf(_C, _S**2)
    ga = PolyFraction.lift(gamma) if gamma is not None else _pf(_t, 2 * (1 - _t))

    cross = 2 * (al * table.u_pair("ah") + be * table.u_pair("hh")
                 + ga * table.u_pair("hd"))
    squares = (al**2 * table.frame_inner("ah", "ah")
               + be**2 * table.frame_inner("hh", "hh")
               + ga**2 * table.frame_inner("hd", "hd"))
    mixed = 2 * (al * be * table.frame_inner("ah", "hh")
                 + al * ga * table.frame_inner("ah", "hd")
                 + be * ga * table.frame_inner("hh", "hd"))
    lower = -(cross + squares + mixed)
    if match is not None:
        reduced = lower.substitute({"n": _pf((1 - _t) * _S)})
        residual = reduced - match
        if not residual.is_zero():
            raise ResidualNonzero(residual)
    return lower


# --------------------------------------------------------------------------
# step machinery
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class StepResult:
    name: str
    kind: str
    anchor: str
    verdict: str  # verified | failed | undecided | skipped
    residual: str | None = None
    detail: tuple = ()

    @property
    def ok(self) -> bool:
        return self.verdict == "verified"


@dataclass
class ChainContext:
    axioms: dict = field(default_factory=default_axioms)
    table: BilinearTable = field(default_factory=BilinearTable.default)
    alpha_shift: Fraction = Fraction(0)
    a7: DyadicInterval | None = None
    precision: int = DEFAULT_PRECISION
    n_min: int = 5

    def __post_init__(self):
        if self.a7 is None:
            self.a7 = DyadicInterval.from_fraction(A7_DECIMAL, self.precision)

    @property
    def alpha_hat(self) -> PolyFraction:
        return _pf(-_HALF * (3 - 4 * _t) + MultiPoly.const(self.alpha_shift))


def _certificate(step_name, kind, anchor, conclusion: PolyFraction, parts,
                 eliminations=(), substitutions=(), detail=()) -> StepResult:
    """Check conclusion == sum(mult * hyp) exactly, then certify multiplier
    signs for inequality hypotheses."""
    residual = conclusion
    notes = list(detail)
    for hyp_name, hyp_poly, relation, mult in parts:
        residual = residual - PolyFraction.lift(mult) * PolyFraction.lift(hyp_poly)
    for var, value, via in eliminations:
        residual = residual.substitute({var: value})
        notes.append(f"eliminated {var} via {via}")
    if not residual.is_zero():
        return StepResult(step_name, kind, anchor, "failed",
                          residual=str(residual), detail=tuple(notes))
    undecided = []
    for hyp_name, hyp_poly, relation, mult in parts:
        if relation != "ge":
            continue
        verdict = certify_nonneg_on_box(PolyFraction.lift(mult))
        if verdict == "negative":
            return StepResult(step_name, kind, anchor, "failed",
                              residual=f"multiplier of {hyp_name} certified negative",
                              detail=tuple(notes))
        if verdict != "certified":
            undecided.append(hyp_name)
    for sub in substitutions:
        notes.append(sub)
    if undecided:
        return StepResult(step_name, kind, anchor, "undecided",
                          residual=f"multiplier sign undecided for {', '.join(undecided)}",
                          detail=tuple(notes))
    return StepResult(step_name, kind, anchor, "verified", detail=tuple(notes))


def _check_list(step_name, kind, anchor, checks, detail=()) -> StepResult:
    notes = list(detail)
    for desc, ok in checks:
        if not ok:
            return StepResult(step_name, kind, anchor, "failed", residual=desc,
                              detail=tuple(notes))
        notes.append(f"ok: {desc}")
    return StepResult(step_name, kind, anchor, "verified", detail=tuple(notes))


# ---- power-sum expansion helper for S1 ------------------------------------

def _power_sum_expand(coeffs, psums) -> MultiPoly:
    """Sum over the spectrum of a polynomial with MultiPoly coefficients,
    expressed through the power sums p_0..p_k of the eigenvalues."""
    total = MultiPoly.zero()
    for k, c in enumerate(coeffs):
        total = total + c * psums[k]
    return total


def _convolve(c1, c2):
    out = [MultiPoly.zero()] * (len(c1) + len(c2) - 1)
    for i, a in enumerate(c1):
        for j, b in enumerate(c2):
            out[i + j] = out[i + j] + a * b
    return out


# --------------------------------------------------------------------------
# the eleven steps
# --------------------------------------------------------------------------

def _run_s1(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    # n*a(x) = n x^2 - n y x - S applied to each eigenvalue; power sums:
    # p0 = n, p1 = 0, p2 = S, p3 = S y, p4 = F4.
    na = [-_S, -_n * _y, _n]
    psums = [_n, MultiPoly.zero(), _S, _S * _y, _F4]
    nasq = _power_sum_expand(_convolve(na, na), psums)            # n^2 ||a||^2
    inner_h = _power_sum_expand(na, psums[1:])                    # n <a, h>
    trace = _power_sum_expand(na, psums)                          # n tr a
    if not inner_h.is_zero() or not trace.is_zero():
        return StepResult("S1", "identity", "traceless square frame is f-normalized",
                          "failed", residual="orthogonality expansion nonzero")
    conclusion = _pf(_S * (nasq - _n**2 * _f))
    return _certificate(
        "S1", "identity", "traceless square frame is f-normalized",
        conclusion,
        parts=(
            ("AX2", ax["AX2"].poly, "eq", _pf(-_n)),
            ("DEF_Y", ax["DEF_Y"].poly, "eq", _pf(_n**2)),
        ),
        detail=("<a,h> and tr a vanish identically in power sums",
                "conclusion cleared by S (positive on the box)"),
    )


def _run_s2(ctx: ChainContext) -> StepResult:
    anchor = "quadratic-form expansion matches the printed lower bound"
    target = printed_lower_bound(_alpha)
    try:
        expand_quadratic_form(alpha=_pf(_alpha), table=ctx.table, match=target)
    except ResidualNonzero as exc:
        return StepResult("S2", "identity", anchor, "failed", residual=str(exc.residual))
    return StepResult(
        "S2", "identity", anchor, "verified",
        detail=("block-swap symmetry of the cyclic average doubles each stored pairing",
                "weights: beta = C/S^2, gamma = t/(2(1-t)); dimension reduced via AX1"),
    )


def _run_s3(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    return _certificate(
        "S3", "identity", "squared constancy relation for the cubic sum",
        _pf(ax["AX3"].poly),
        parts=(
            ("DEF_Y", ax["DEF_Y"].poly, "eq", _pf(_t**2 * _S**2)),
            ("AX3_LIN", ax["AX3_LIN"].poly, "eq", _pf(_t * _S**2 * _y + 2 * _C)),
        ),
    )


def _run_s4(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    return _certificate(
        "S4", "identity", "split form of the defect identity",
        _pf(_n * ax["AX4_SPLIT"].poly),
        parts=(
            ("AX2", ax["AX2"].poly, "eq", _pf(1 - _t)),
            ("AX1", ax["AX1"].poly, "eq", _pf(_S**2)),
            ("AX4", ax["AX4"].poly, "eq", _pf(_n * (1 - _t))),
        ),
        detail=("conclusion cleared by n (positive on the box)",),
    )


def _run_s5(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    s5poly = (_t * (2 * _t - 1) * _S**3 - _USQ - Fraction(3, 2) * _t * _S**2
              + Fraction(3, 2) * (_A - 2 * _B))
    return _certificate(
        "S5", "identity", "second-derivative norm bridge",
        _pf(s5poly),
        parts=(
            ("DEF_USQ", ax["DEF_USQ"].poly, "eq", _pf(-1)),
            ("AX4", ax["AX4"].poly, "eq", _pf(Fraction(3, 2))),
        ),
        eliminations=(("n", _pf((1 - _t) * _S), "AX1"),),
    )


def _s6_conclusion() -> MultiPoly:
    return _t * _F3SQ + _t * _S**2 - (2 - _t) * _A - (1 + 2 * _t) * _B


def _run_s6(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    return _certificate(
        "S6", "implication", "maximum-principle consequence in squared variables",
        _pf(_s6_conclusion()),
        parts=(
            ("AX5", ax["AX5"].poly, "ge", _pf(1)),
            ("AX4", ax["AX4"].poly, "eq", _pf(-_t)),
        ),
    )


def _run_s7(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    c7 = _THIRD * (_A - _B) - (1 - _t) * _S * _f
    return _certificate(
        "S7", "implication", "defect controlled by the gradient difference",
        _pf(_t * _S**2 * c7),
        parts=(
            ("S6", _s6_conclusion(), "ge", _pf(_t * _S**2)),
            ("AX6", ax["AX6"].poly, "ge", _pf(4)),
            ("AX3", ax["AX3"].poly, "eq", _pf(-1)),
            ("AX4_SPLIT", ax["AX4_SPLIT"].poly, "eq", _pf(-_t * _S**2)),
        ),
        detail=("conclusion cleared by t*S^2 (positive on the box)",),
    )


def master_conclusion() -> PolyFraction:
    """The master inequality: t(2t-1)S^3 >= (4t^2-9t+3)/(3(1-t)) (A-B) - 2t^2 S^2/(1-t),
    stated as nonnegativity of the difference."""
    return (_pf(_t * (2 * _t - 1) * _S**3)
            - _pf((4 * _t**2 - 9 * _t + 3) * (_A - _B), 3 * (1 - _t))
            + _pf(2 * _t**2 * _S**2, 1 - _t))


def _run_s8(ctx: ChainContext) -> StepResult:
    ax = ctx.axioms
    anchor = "master cancellation"
    alpha_hat = ctx.alpha_hat
    try:
        lower = expand_quadratic_form(alpha=alpha_hat, table=ctx.table)
    except ResidualNonzero as exc:  # defensive; no match requested here
        return StepResult("S8", "implication", anchor, "failed", residual=str(exc.residual))
    lower = lower.substitute({"n": _pf((1 - _t) * _S)})
    ax7 = _pf(_USQ) - lower

    z = _pf(17 * _t**2 - 33 * _t + 24, _t * (1 - _t))
    mult_s6 = _pf(8 * _t**2 - 15 * _t + 9, 1 - _t)
    s5poly = (_t * (2 * _t - 1) * _S**3 - _USQ - Fraction(3, 2) * _t * _S**2
              + Fraction(3, 2) * (_A - 2 * _B))

    return _certificate(
        "S8", "implication", anchor,
        master_conclusion(),
        parts=(
            ("S5", s5poly, "eq", _pf(1)),
            ("AX7(alpha_hat)", ax7, "ge", _pf(1)),
            ("S6", _s6_conclusion(), "ge", mult_s6),
            ("AX6", ax["AX6"].poly, "ge", z / _pf(_S**2)),
            ("DEF_Y", ax["DEF_Y"].poly, "eq", 2 * alpha_hat * _pf(_t)),
            ("AX3_LIN", ax["AX3_LIN"].poly, "eq", 2 * alpha_hat * _pf(_y)),
            ("AX3", ax["AX3"].poly, "eq", -(1 + z) / _pf(4 * _S**2)),
            ("AX4_SPLIT", ax["AX4_SPLIT"].poly, "eq", -2 * alpha_hat**2 / _pf(1 - _t)),
        ),
        substitutions=("alpha = -(3-4t)/2", "t*z = (17t^2 - 33t + 24)/(1-t)"),
    )


def _run_s9(ctx: ChainContext) -> StepResult:
    rho1 = ROOT_LOW_33
    rho2 = ROOT_HIGH_33
    gap = SURD_GAP
    nmin = Fraction(ctx.n_min)
    threshold = QuadraticSurd.make(Fraction(3, 2), Fraction(1, 2), 33)  # 2c/(2-c)
    checks = (
        ("rho1 is a root of the branch quadratic",
         4 * rho1 * rho1 - 9 * rho1 + 3 == 0),
        ("Vieta for the branch quadratic",
         rho1 + rho2 == Fraction(9, 4) and rho1 * rho2 == Fraction(3, 4)),
        ("branch quadratic is nonnegative left of rho1 (both factors nonpositive)",
         rho1 < rho2),
        ("gap term equals 2 rho1/(1 - rho1)",
         2 * rho1 / (1 - rho1) == gap),
        ("gap term is below 2", gap < 2),
        ("threshold 2 gap/(2 - gap) equals (sqrt(33)+3)/2",
         2 * gap / (2 - gap) == threshold),
        ("dimension dominates the threshold", threshold <= nmin),
        ("n/(2(n+1)) >= 5/12 at the smallest dimension",
         nmin / (2 * (nmin + 1)) >= Fraction(5, 12)),
        ("5/12 exceeds the lower split point", rho1 < Fraction(5, 12)),
    )
    return _check_list(
        "S9", "implication", "branch contradiction at the lower split", checks,
        detail=("division clearings: t*S^2 > 0, 1-t > 0, 2n - gap > 0 on the box",
                "n/(2(n+1)) is increasing in n, so the bound holds for every n >= 5",
                "conclusion: assuming t <= (9-sqrt(33))/8 forces "
                "t >= n/(2(n+1)) > 5/12 > (9-sqrt(33))/8, a contradiction"),
    )


def _run_s10(ctx: ChainContext) -> StepResult:
    r1 = ROOT_LOW_465
    r2 = ROOT_HIGH_465
    rho1 = ROOT_LOW_33
    sqrt465 = QuadraticSurd.sqrt_of(465)
    # seed quadratic matches the a = 2 member of the refined family
    t = _t
    a2_quadratic = 9 * ((2 + Fraction(8, 9)) * t**2 - 5 * t + MultiPoly.const(Fraction(5, 3)))
    seed_quadratic = 26 * t**2 - 45 * t + 15
    denom_at_r1 = 45 + sqrt465 - 52 * r1
    g_at_r1 = 36 * r1 / denom_at_r1
    checks = (
        ("Vieta for the seed quadratic",
         r1 + r2 == Fraction(45, 26) and r1 * r2 == Fraction(15, 26)),
        ("r1 is a root of the seed quadratic",
         26 * r1 * r1 - 45 * r1 + 15 == 0),
        ("seed quadratic equals the a = 2 member of the refined family",
         (a2_quadratic - seed_quadratic).is_zero()),
        ("denominator at r1 collapses to 2 sqrt(465)",
         denom_at_r1 == 2 * sqrt465),
        ("denominator positive on the branch", denom_at_r1.sign() > 0),
        ("correction value g(r1) matches the closed form",
         g_at_r1 == CORR_465),
        ("correction is positive", CORR_465.sign() > 0),
        ("slope closed form: 1/(1 - r1) = (sqrt(465) - 7)/8",
         1 / (1 - r1) == SLOPE_316),
        ("offset closed form: corr/(1 - r1) = (9/4)(1 - sqrt(465)/31)",
         CORR_465 * SLOPE_316 == OFFSET_316),
        ("upper branch root exceeds one", r2 > 1),
        ("branch window is nonempty: rho1 < r1",
         rho1 < Fraction(43, 100) and Fraction(43, 100) < r1),
    )
    return _check_list(
        "S10", "implication", "first-pass linear bound", checks,
        detail=("on t > rho1 the branch quadratic is negative, so the seed bound"
                " applies with a nonnegative multiplier",
                "g is increasing on [0, r1]: derivative numerator 36(45+sqrt(465)) > 0",
                "monotonicity closes the contradiction, yielding"
                " t >= r1 - corr/S and S > slope*n - offset"),
    )


def _run_s11(ctx: ChainContext) -> StepResult:
    anchor = "refined quadratic chain"
    qa = (2 + Fraction(4, 9) * _a) * _t**2 - (3 + _a) * _t + (1 + _THIRD * _a)
    family_identity = 9 * qa - (18 * _t**2 - 27 * _t + 9 + _a * (4 * _t**2 - 9 * _t + 3))
    if not family_identity.is_zero():
        return StepResult("S11", "implication", anchor, "failed",
                          residual=str(family_identity))
    try:
        rq = derive_refined_quadratic(ctx.a7, ctx.precision)
    except NonPositiveDiscriminant as exc:
        return StepResult("S11", "implication", anchor, "failed", residual=str(exc))
    rho1 = ROOT_LOW_33
    r1, r2 = rq.root_low, rq.root_high
    checks = (
        ("roots are separated", r1.strictly_less(r2)),
        ("lower root sits right of the lower split",
         (QuadraticSurd.make(r1.lo) - rho1).sign() > 0),
        ("lower root sits left of one-half", r1.hi < Fraction(1, 2)),
        ("upper root exceeds one", r2.lo > 1),
        ("correction enclosure is positive", rq.corr.strictly_positive()),
        ("slope enclosure is positive", rq.slope.strictly_positive()),
        ("denominator factor stays negative on the branch: r1 < r2", r1.hi < r2.lo),
    )
    result = _check_list("S11", "implication", anchor, checks)
    if not result.ok:
        return result
    detail = result.detail + (
        "family identity: clearing (1-t) from the master comparison yields"
        " (2+4a/9)t^2 - (3+a)t + (1+a/3)",
        f"a7 in [{rq.a7.lo}, {rq.a7.hi}]",
        f"lower root in [{r1.lo}, {r1.hi}]",
        f"upper root in [{r2.lo}, {r2.hi}]",
        f"correction in [{rq.corr.lo}, {rq.corr.hi}]",
        f"slope in [{rq.slope.lo}, {rq.slope.hi}]",
        f"offset in [{rq.offset.lo}, {rq.offset.hi}]",
    )
    return StepResult("S11", "implication", anchor, "verified", detail=detail)


_RUNNERS = {
    "S1": _run_s1, "S2": _run_s2, "S3": _run_s3, "S4": _run_s4,
    "S5": _run_s5, "S6": _run_s6, "S7": _run_s7, "S8": _run_s8,
    "S9": _run_s9, "S10": _run_s10, "S11": _run_s11,
}


# --------------------------------------------------------------------------
# public entry points
# --------------------------------------------------------------------------

def verify_step(name: str, *, alpha_shift=0, table: BilinearTable | None = None,
                axioms: dict | None = None, a7: DyadicInterval | None = None,
                precision: int = DEFAULT_PRECISION, n_min: int = 5) -> StepResult:
    """Verify one step, assuming its prerequisites hold (they are re-checked
    by verify_all).  Perturbation hooks: ``alpha_shift`` shifts the master
    weight, ``table`` swaps in a perturbed bilinear table, ``axioms``
    overrides axiom polynomials."""
    if name not in _RUNNERS:
        raise KeyError(f"unknown step {name!r}; steps are {STEP_ORDER}")
    ctx = ChainContext(axioms=axioms or default_axioms(),
                       table=table or BilinearTable.default(),
                       alpha_shift=_as_fraction(alpha_shift),
                       a7=a7, precision=precision, n_min=n_min)
    return _RUNNERS[name](ctx)


@dataclass(frozen=True)
class ChainReport:
    results: tuple

    @property
    def all_verified(self) -> bool:
        return all(r.verdict == "verified" for r in self.results)

    @property
    def counts(self) -> dict:
        out: dict = {}
        for r in self.results:
            out[r.verdict] = out.get(r.verdict, 0) + 1
        return out

    def result(self, name: str) -> StepResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_obj(self) -> list:
        out = []
        for r in self.results:
            entry = {"step": r.name, "anchor": r.anchor, "kind": r.kind,
                     "verdict": r.verdict}
            if r.residual is not None:
                entry["residual"] = r.residual
            out.append(entry)
        return out


def verify_all(*, alpha_shift=0, table: BilinearTable | None = None,
               axioms: dict | None = None, a7: DyadicInterval | None = None,
               precision: int = DEFAULT_PRECISION, n_min: int = 5,
               steps=None) -> ChainReport:
    """Run the ledger in dependency order; dependents of a failed or
    undecided step are skipped."""
    ctx = ChainContext(axioms=axioms or default_axioms(),
                       table=table or BilinearTable.default(),
                       alpha_shift=_as_fraction(alpha_shift),
                       a7=a7, precision=precision, n_min=n_min)
    selected = STEP_ORDER if steps is None else tuple(steps)
    bad: set = set()
    results = []
    for name in selected:
        if name not in _RUNNERS:
            raise KeyError(f"unknown step {name!r}")
        broken = [d for d in STEP_DEPS[name] if d in bad]
        if broken:
            results.append(StepResult(name, STEP_KINDS[name], STEP_ANCHORS[name],
                                      "skipped",
                                      residual=f"depends on {', '.join(broken)}"))
            bad.add(name)
            continue
        res = _RUNNERS[name](ctx)
        results.append(res)
        if res.verdict != "verified":
            bad.add(name)
    return ChainReport(tuple(results))
