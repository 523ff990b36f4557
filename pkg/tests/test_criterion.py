from fractions import Fraction as F

import pytest

from prodcheck.models import CHECK
from prodcheck.natlaws.criterion import (
    check_weight_family,
    dfa_criterion,
    freeze,
    mfa_criterion,
    no_go_witness,
    pushforward,
    q_expected,
    random_mfa_input,
    tau_mc,
    tau_mfa,
    tau_product,
)
from prodcheck.product import mfa_law
from prodcheck.rng import Lcg

A, AA = ("a",), ("a", "a")


def test_hand_evaluated_mfa_input():
    sigma1 = freeze({A: F(1, 3)})
    mu1 = freeze({A: 1})
    nu = {sigma1: F(1, 2), CHECK: F(1, 4)}
    delta = {"a": {mu1: 2, CHECK: 1}, "b": {}}
    assert tau_mc(nu, "a") == {A: F(1, 4), AA: F(1, 6)}
    assert tau_mfa(delta) == {A: 1, AA: 2}
    left = q_expected(freeze(tau_mc(nu, "a")), freeze(tau_mfa(delta)))
    right = tau_product(pushforward(q_expected, mfa_law(nu, "a", delta)))
    assert left == right == F(7, 12)


def test_mfa_law_passes():
    result = mfa_criterion(100, seed=0)
    assert (result.passed, result.total) == (100, 100)


def test_dfa_law_passes():
    result = dfa_criterion(100, seed=0)
    assert result.ok and result.total == 100


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_laws_pass_on_other_seeds(seed):
    assert mfa_criterion(50, seed).ok
    assert dfa_criterion(50, seed).ok


def test_inputs_are_not_trivial():
    rng = Lcg(0)
    lefts = []
    for _ in range(100):
        nu, letter, delta = random_mfa_input(rng)
        lefts.append(q_expected(freeze(tau_mc(nu, letter)), freeze(tau_mfa(delta))))
    assert sum(1 for v in lefts if v) >= 30


def test_perturbed_law_fails():
    result = mfa_criterion(100, seed=0, perturb=1)
    assert not result.ok
    cx = result.counterexample
    assert cx.left + 1 == cx.right


def test_sampling_is_deterministic():
    assert mfa_criterion(30, 9) == mfa_criterion(30, 9)


def test_no_go_r_one():
    report = no_go_witness(1)
    assert (report.left, report.right) == (1, 0)
    assert report.contradiction
    assert report.pair_parameters == (0,)


def test_no_go_r_half_word_ab():
    report = no_go_witness(F(1, 2), "a", ("a", "b"))
    assert (report.left, report.right) == (F(1, 2), 0)


@pytest.mark.parametrize("r", [F(0), F(1, 4), F(1, 3), F(1)])
@pytest.mark.parametrize("accept", [True, False])
def test_check_weight_family_agrees(r, accept):
    left, forced = check_weight_family(r, "a", accept)
    assert left == forced == (1 - r) * int(accept)


@pytest.mark.parametrize("r", [0, F(3, 2), -1])
def test_no_go_range(r):
    with pytest.raises(ValueError):
        no_go_witness(r)
