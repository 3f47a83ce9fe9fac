"""Concrete ``GL_n`` model over ``F_{q^s}((t))``: retractions, Cartan
invariants and a window-bounded affine Deligne-Lusztig enumerator."""

from .adlv import AdlvResult, HodgeNewtonReport, adlv_enumerate, adlv_levi, hodge_newton_verify, parse_b
from .field import FiniteField, get_field
from .matrix import LaurentMatrix, block_diagonal
from .retraction import (
    BorelChoice,
    HNWitnessReport,
    KMRecord,
    adjacency_jump,
    all_borels,
    cartan_by_minors,
    cartan_invariants,
    hn_witness_check,
    iwasawa_retraction,
    km_membership,
    retraction_by_minors,
)
from .series import Series, parse_series

__all__ = [
    "AdlvResult", "BorelChoice", "FiniteField", "HNWitnessReport", "HodgeNewtonReport", "KMRecord",
    "LaurentMatrix", "Series", "adjacency_jump", "adlv_enumerate", "adlv_levi", "all_borels",
    "block_diagonal", "cartan_by_minors", "cartan_invariants", "get_field", "hn_witness_check",
    "hodge_newton_verify", "iwasawa_retraction", "km_membership", "parse_b", "parse_series",
    "retraction_by_minors",
]
