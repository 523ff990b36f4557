"""Exact model checking of labelled Markov chains against DFAs and MFAs
through product constructions, plus a small lab for the natural
transformations behind those constructions (:mod:`prodcheck.natlaws`)."""

from .models import (
    CHECK,
    Dfa,
    LabelledMC,
    Mfa,
    ModelError,
    Nfa,
    check_unambiguous,
    determinize,
    embed_nfa_as_mfa,
    validate_mc,
)
from .product import (
    SINK,
    WeightedProduct,
    mc_dfa_product,
    mc_mfa_product,
    normalize_to_reward_mc,
)
from .semantics import (
    INFINITY,
    dfa_bounded_language,
    infer_q_expected,
    infer_q_prob,
    mc_bounded_traces,
    mfa_bounded_multiset,
    nfa_bounded_language,
    product_value_exact,
    product_value_iterate,
)

__all__ = [
    "CHECK",
    "Dfa",
    "INFINITY",
    "LabelledMC",
    "Mfa",
    "ModelError",
    "Nfa",
    "SINK",
    "WeightedProduct",
    "check_unambiguous",
    "determinize",
    "dfa_bounded_language",
    "embed_nfa_as_mfa",
    "infer_q_expected",
    "infer_q_prob",
    "mc_bounded_traces",
    "mc_dfa_product",
    "mc_mfa_product",
    "mfa_bounded_multiset",
    "nfa_bounded_language",
    "normalize_to_reward_mc",
    "product_value_exact",
    "product_value_iterate",
    "validate_mc",
]
