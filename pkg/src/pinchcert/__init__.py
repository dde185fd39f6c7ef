"""Certified verification pipeline for a sharpened curvature-pinching bound.

Five cooperating pieces: exact dyadic-interval/surd/polynomial arithmetic,
a registry of every printed constant with certified enclosures, a ledger
verifier that checks each proof step as a polynomial multiplier certificate,
a certified bootstrap fixed-point solver, and a randomized falsifier for the
pointwise identities the derivation consumes.
"""

from .bootstrap import (BoundRow, InvalidRange, InvalidSplit, IterationTrace,
                        NoConvergence, NoSignChange, bound_table, fixed_point,
                        iterate, solve_split)
from .chain import (BilinearTable, ChainReport, ResidualNonzero, StepResult,
                    default_axioms, expand_quadratic_form, printed_lower_bound,
                    verify_all, verify_step)
from .constants import (NamedConstant, NonPositiveDiscriminant, RefinedQuadratic,
                        by_key, catalog, derive_refined_quadratic)
from .dyadic import (DEFAULT_PRECISION, DivisionByZeroInterval, DyadicInterval,
                     NegativeSqrtDomain, interval_op)
from .falsifier import (CampaignReport, ClaimVerdict, CurvatureSpectrum,
                        DegenerateSample, EmptyNullSpace, GradTensor,
                        HardViolation, ScalarSet, campaign, check_identities,
                        check_inequalities, compute_scalars, gap_statistic,
                        sample_gradtensor, sample_spectrum)
from .poly import MultiPoly, PolyFraction
from .roots import RootIsolation, ZeroPolynomial, count_roots, isolate_roots
from .surd import MixedRadicandError, QuadraticSurd

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION", "DyadicInterval", "interval_op",
    "DivisionByZeroInterval", "NegativeSqrtDomain",
    "QuadraticSurd", "MixedRadicandError",
    "MultiPoly", "PolyFraction",
    "RootIsolation", "isolate_roots", "count_roots", "ZeroPolynomial",
    "NamedConstant", "catalog", "by_key", "derive_refined_quadratic",
    "RefinedQuadratic", "NonPositiveDiscriminant",
    "BilinearTable", "expand_quadratic_form", "printed_lower_bound",
    "verify_step", "verify_all", "ChainReport", "StepResult",
    "ResidualNonzero", "default_axioms",
    "iterate", "fixed_point", "solve_split", "bound_table",
    "IterationTrace", "BoundRow",
    "InvalidSplit", "NoConvergence", "NoSignChange", "InvalidRange",
    "CurvatureSpectrum", "GradTensor", "ScalarSet", "ClaimVerdict",
    "sample_spectrum", "sample_gradtensor", "compute_scalars",
    "check_identities", "check_inequalities", "gap_statistic", "campaign",
    "CampaignReport", "DegenerateSample", "EmptyNullSpace", "HardViolation",
    "__version__",
]
