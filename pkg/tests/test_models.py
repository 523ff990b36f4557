from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dfa_accepts, nfa_run_count, run_count, words
from prodcheck.corpus import random_mc, random_nfa
from prodcheck.models import (
    CHECK,
    Dfa,
    LabelledMC,
    Mfa,
    ModelError,
    Nfa,
    check_unambiguous,
    determinize,
    dfa_as_nfa,
    embed_nfa_as_mfa,
    validate_mc,
)
from prodcheck.rng import Lcg


def one_state(row):
    return LabelledMC(["x"], ["a"], {"x": "a"}, {"x": row})


def test_loop_mc_is_valid(loop_mc):
    assert validate_mc(loop_mc).ok


def test_mass_over_one_is_reported():
    report = validate_mc(one_state({"x": Fraction(2, 3), CHECK: Fraction(1, 2)}))
    assert not report
    assert "mass exceeds 1 at x" in report.violations


def test_negative_probability_is_reported():
    report = validate_mc(one_state({CHECK: Fraction(-1, 2)}))
    assert any(v.startswith("negative probability at x") for v in report.violations)


def test_missing_label_and_unknown_successor():
    mc = LabelledMC(["x"], ["a"], {}, {"x": {"z": Fraction(1, 2)}})
    report = validate_mc(mc)
    assert "missing label at x" in report.violations
    assert any("unknown successor" in v for v in report.violations)


def test_deadlock_mass_is_legal():
    assert validate_mc(one_state({CHECK: Fraction(1, 5)})).ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 4))
def test_epsilon_past_one_flips_verdict(seed, n):
    rng = Lcg(seed)
    mc = random_mc(rng, n, deadlock=False)
    assert validate_mc(mc).ok
    x = mc.states[0]
    row = dict(mc.succ[x])
    target = next(iter(row))
    row[target] += Fraction(1, 1000)
    bumped = LabelledMC(mc.states, mc.alphabet, mc.label, {**mc.succ, x: row})
    assert f"mass exceeds 1 at {x}" in validate_mc(bumped).violations


def test_dfa_must_be_total():
    with pytest.raises(ModelError):
        Dfa(["y"], ["a", "b"], {"y": {"a": ("y", True)}})


def test_reserved_state_name():
    with pytest.raises(ModelError):
        Nfa([CHECK], ["a"], {})


def test_mfa_rejects_negative_multiplicity():
    with pytest.raises(ModelError):
        Mfa(["y"], ["a"], {"y": {"a": {"y": -1}}})


def test_determinize_single_state():
    nfa = Nfa(["y"], ["a"], {"y": {"a": {"y", CHECK}}})
    dfa = determinize(nfa)
    assert dfa.states == ("{y}",)
    assert dfa.delta["{y}"]["a"] == ("{y}", True)


def test_determinize_deterministic_nfa_is_isomorphic():
    dfa = Dfa(["p", "q"], ["a", "b"], {"p": {"a": ("q", False), "b": ("p", False)}, "q": {"a": ("q", True), "b": ("p", False)}})
    det = determinize(dfa_as_nfa(dfa), ["p"])
    rename = {"{p}": "p", "{q}": "q"}
    assert set(det.states) == set(rename)
    for s, row in det.delta.items():
        for a, (t, acc) in row.items():
            assert dfa.delta[rename[s]][a] == (rename[t], acc)


def test_count_nfa_determinizes_to_a_plus(count_nfa):
    dfa = determinize(count_nfa, ["y1"])
    assert dfa.states == ("{y1}", "{y1,y2}")
    for n in range(1, 7):
        assert dfa_accepts(dfa, "{y1}", ("a",) * n)


def test_embed_is_multiplicity_one(count_nfa, count_mfa):
    assert embed_nfa_as_mfa(count_nfa) == count_mfa
    empty = embed_nfa_as_mfa(Nfa(["y"], ["a"], {}))
    assert empty.delta["y"]["a"] == {}


def test_count_nfa_is_ambiguous(count_nfa):
    report = check_unambiguous(count_nfa, 6, ["y1"])
    assert not report
    assert report.witness == ("a", "a")
    assert nfa_run_count(count_nfa, "y1", ("a", "a")) == 2


def test_witness_beyond_depth_is_withheld(count_nfa):
    report = check_unambiguous(count_nfa, 1, ["y1"])
    assert not report.unambiguous and report.witness is None


def test_dfa_as_nfa_is_unambiguous():
    dfa = Dfa(["p", "q"], ["a", "b"], {"p": {"a": ("q", True), "b": ("p", True)}, "q": {"a": ("p", True), "b": ("q", False)}})
    assert check_unambiguous(dfa_as_nfa(dfa), 6)


def test_disjoint_branches_are_unambiguous():
    # from s, "a" then "b" only via p, "b" then "a" only via q
    nfa = Nfa(["s", "p", "q"], ["a", "b"], {"s": {"a": {"p"}, "b": {"q"}}, "p": {"b": {CHECK}}, "q": {"a": {CHECK}}})
    assert check_unambiguous(nfa, 6, ["s"])
    assert all(nfa_run_count(nfa, "s", w) <= 1 for w in words("ab", 6))


def corpus_nfas(count=25, seed=5):
    rng = Lcg(seed)
    return [random_nfa(rng, 1 + rng.below(3)) for _ in range(count)]


@pytest.mark.parametrize("nfa", corpus_nfas())
def test_determinize_matches_run_counts(nfa):
    dfa = determinize(nfa)
    mfa = embed_nfa_as_mfa(nfa)
    for y in nfa.states:
        for w in words(nfa.alphabet, 6):
            runs = run_count(mfa, y, w)
            assert runs == nfa_run_count(nfa, y, w)
            assert dfa_accepts(dfa, "{" + y + "}", w) == (runs >= 1)


@pytest.mark.parametrize("nfa", corpus_nfas(40, 9))
def test_unambiguous_means_zero_one_counts(nfa):
    mfa = embed_nfa_as_mfa(nfa)
    for y in nfa.states:
        report = check_unambiguous(nfa, 6, [y])
        counts = [run_count(mfa, y, w) for w in words(nfa.alphabet, 6)]
        if report:
            assert set(counts) <= {0, 1}
        elif report.witness is not None:
            assert run_count(mfa, y, report.witness) >= 2
