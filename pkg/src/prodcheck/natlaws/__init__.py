"""Natural transformations between the functors ``F_A`` for commutative monoids A."""

from .criterion import check_criterion, dfa_criterion, mfa_criterion, no_go_witness
from .families import (
    NatFamily,
    NotNaturalError,
    extract_b,
    make_case1,
    make_case2,
    make_normalized,
    make_scaled,
    raw_family,
    zero_family,
)
from .monoids import NAT, QPLUS, FinMonoid, MonoidError, bool_or, cyclic, fa_apply
from .naturality import check_naturality, enumerate_nat_trans

__all__ = [
    "FinMonoid",
    "MonoidError",
    "NAT",
    "NatFamily",
    "NotNaturalError",
    "QPLUS",
    "bool_or",
    "check_criterion",
    "check_naturality",
    "cyclic",
    "dfa_criterion",
    "enumerate_nat_trans",
    "extract_b",
    "fa_apply",
    "make_case1",
    "make_case2",
    "make_normalized",
    "make_scaled",
    "mfa_criterion",
    "no_go_witness",
    "raw_family",
    "zero_family",
]
