"""Non-emptiness of affine Deligne-Lusztig sets for basic classes.

The abstract layer works with root data, coinvariant lattices and the
finite sets ``P_mu``; :mod:`adlsets.dvr` is a concrete ``GL_n`` model over
truncated Laurent series used to test the underlying lemmas.
"""

from .errors import (
    BudgetExceeded,
    HypothesisViolated,
    LeviMismatch,
    LeviNotSigmaStable,
    NotAdjacent,
    NotAnAutomorphism,
    NotDominant,
    PrecisionExhausted,
    RootDatumError,
)
from .mu_sets import convexity_oracle, enumerate_Pmu, in_Pmu, in_PmuM, pmu_image
from .newton import (
    BasicClass,
    converse_scan,
    hn_hypothesis,
    mazur_check,
    newton_point,
    newton_point_of_basic,
    nonempty,
    slopes_on_N,
)
from .orders import leq_P, leq_P_YM, reform_equiv_report, to_YM, validate_sigma
from .root_datum import RootDatum, build_root_datum, levi, project_XM, root_datum_from_json

__version__ = "0.1.0"

__all__ = [
    "BasicClass", "BudgetExceeded", "HypothesisViolated", "LeviMismatch", "LeviNotSigmaStable",
    "NotAdjacent", "NotAnAutomorphism", "NotDominant", "PrecisionExhausted", "RootDatum",
    "RootDatumError", "build_root_datum", "converse_scan", "convexity_oracle", "enumerate_Pmu",
    "hn_hypothesis", "in_Pmu", "in_PmuM", "leq_P", "leq_P_YM", "levi", "mazur_check", "newton_point",
    "newton_point_of_basic", "nonempty", "pmu_image", "project_XM", "reform_equiv_report",
    "root_datum_from_json", "slopes_on_N", "to_YM", "validate_sigma",
]
