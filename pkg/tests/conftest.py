from fractions import Fraction
from pathlib import Path

import pytest

from prodcheck.models import CHECK, Dfa, LabelledMC, Mfa, Nfa

MODELS = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture
def models_dir():
    return MODELS


@pytest.fixture
def loop_mc():
    return LabelledMC(["x"], ["a"], {"x": "a"}, {"x": {"x": Fraction(2, 3), CHECK: Fraction(1, 3)}})


@pytest.fixture
def count_mfa():
    return Mfa(
        ["y1", "y2"],
        ["a"],
        {"y1": {"a": {"y1": 1, "y2": 1, CHECK: 1}}, "y2": {"a": {"y2": 1, CHECK: 1}}},
    )


@pytest.fixture
def count_nfa():
    return Nfa(["y1", "y2"], ["a"], {"y1": {"a": {"y1", "y2", CHECK}}, "y2": {"a": {"y2", CHECK}}})


@pytest.fixture
def accept_all():
    return Dfa(["y"], ["a"], {"y": {"a": ("y", True)}})
