import json
import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prodcheck import io
from prodcheck.cli import main
from prodcheck.corpus import random_mc, random_mfa, random_nfa
from prodcheck.models import CHECK
from prodcheck.product import mc_mfa_product
from prodcheck.rational import format_decimal, format_rational, parse_rational
from prodcheck.rng import Lcg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- rationals -------------------------------------------------------------


@given(st.fractions())
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_rational_parsing():
    assert parse_rational("2/4") == F(1, 2)
    assert parse_rational("-3") == -3
    assert parse_rational(7) == 7
    for bad in ("0.5", "1/0", "a", 0.5, True, None):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_formatting():
    assert format_rational(F(3)) == "3"
    assert format_rational(F(2, 6)) == "1/3"
    assert format_rational(math.inf) == "infinity"
    assert format_decimal(F(1, 3)) == "0.333333"
    assert format_decimal(F(2, 3)) == "0.666667"
    assert format_decimal(3) == "3.000000"
    assert format_decimal(F(-1, 8), 2) == "-0.12"


# -- files -----------------------------------------------------------------


def test_json_syntax_error_position():
    with pytest.raises(io.InputError) as info:
        io.loads('{\n  "kind": "mc",\n  "alphabet": ["a"]\n  "states": []\n}', "m.json")
    assert (info.value.line, info.value.column) == (4, 3)
    assert "m.json:4:3" in str(info.value)


def test_schema_errors():
    with pytest.raises(io.InputError, match="kind"):
        io.loads('{"kind": "pda"}')
    with pytest.raises(io.InputError, match="trans.x.CHECK"):
        io.loads('{"kind": "mc", "alphabet": ["a"], "states": ["x"], "label": {"x": "a"}, "trans": {"x": {"CHECK": 0.5}}}')
    with pytest.raises(io.InputError, match="expected kind"):
        io.loads('{"kind": "monoid", "elements": [0], "op": [[0]], "zero": 0}', expect=("mc",))


def test_monoid_axiom_error_names_triple():
    doc = '{"kind": "monoid", "elements": ["e", "a", "b"], "op": [["e", "a", "b"], ["a", "e", "e"], ["b", "e", "a"]], "zero": "e"}'
    with pytest.raises(io.InputError, match=r"associativity fails for \('a', 'a', 'b'\)"):
        io.loads(doc)


@pytest.mark.parametrize("name", ["loop_mc", "count_mfa", "count_nfa", "accept_all_dfa", "divergent_mfa", "z3", "bool_or"])
def test_model_files_round_trip(models_dir, name):
    model = io.load(models_dir / f"{name}.json")
    again = io.loads(io.dumps(model))
    assert io.to_doc(again) == io.to_doc(model)


def test_random_models_round_trip():
    rng = Lcg(3)
    for _ in range(20):
        for model in (random_mc(rng, 3), random_mfa(rng, 2), random_nfa(rng, 2)):
            assert io.loads(io.dumps(model)) == model


def test_product_round_trip():
    rng = Lcg(8)
    for _ in range(10):
        p = mc_mfa_product(random_mc(rng, 3), random_mfa(rng, 2))
        assert io.loads(io.dumps(p)) == p


# -- commands --------------------------------------------------------------


def test_check_running_example(capsys, models_dir):
    code, out, _ = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "count_mfa.json"), "--init", "x,y1")
    assert code == 0
    assert out.splitlines()[:2] == ["value: 3", "decimal: 3.000000"]


def test_check_accept_all(capsys, models_dir):
    code, out, _ = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "accept_all_dfa.json"), "--init", "x,y", "--json")
    assert code == 0
    assert json.loads(out)["value"] == "1"


def test_check_divergent(capsys, models_dir):
    code, out, _ = run(capsys, "check", "--mc", str(models_dir / "divergent_mc.json"),
                       "--spec", str(models_dir / "divergent_mfa.json"), "--init", "x,y", "--oracle-depth", "6")
    assert code == 0
    assert "value: infinity" in out and "gap: infinity" in out


def test_check_oracle_gap(capsys, models_dir):
    code, out, _ = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "count_mfa.json"), "--init", "x,y1",
                       "--oracle-depth", "3", "--json")
    doc = json.loads(out)
    assert doc["oracle"]["value"] == "11/9"
    assert doc["oracle"]["gap"] == "16/9"


def test_check_nfa_routes_through_determinisation(capsys, models_dir):
    code, out, err = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                         "--spec", str(models_dir / "even_length_nfa.json"), "--init", "x,odd", "--json")
    assert code == 0
    assert "determinised" in err
    doc = json.loads(out)
    assert doc["value"] == doc["mfa_route_value"] == "3/5"
    assert doc["unambiguous"] is True


def test_check_ambiguous_nfa_reports_witness(capsys, models_dir):
    code, out, _ = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "count_nfa.json"), "--init", "x,y1", "--json")
    doc = json.loads(out)
    assert doc["value"] == "1" and doc["ambiguity_witness"] == "aa"


@pytest.mark.parametrize("argv", [
    ("--init", "x,nope"),
    ("--init", "x"),
    ("--init", "zz,y1"),
])
def test_check_bad_init(capsys, models_dir, argv):
    code, _, err = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "count_mfa.json"), *argv)
    assert code == 2 and err.startswith("error:")


def test_check_invalid_mc(capsys, tmp_path, models_dir):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "mc", "alphabet": ["a"], "states": ["x"], "label": {"x": "a"},'
                   ' "trans": {"x": {"x": "2/3", "CHECK": "1/2"}}}')
    code, _, err = run(capsys, "check", "--mc", str(bad), "--spec", str(models_dir / "count_mfa.json"), "--init", "x,y1")
    assert code == 2 and "mass exceeds 1 at x" in err


def test_check_alphabet_mismatch(capsys, tmp_path, models_dir):
    other = tmp_path / "b.json"
    other.write_text('{"kind": "dfa", "alphabet": ["b"], "states": ["y"], "delta": {"y": {"b": {"to": "y", "accept": true}}}}')
    code, _, err = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"), "--spec", str(other), "--init", "x,y")
    assert code == 2 and "alphabet mismatch" in err


def test_check_parse_error_position(capsys, tmp_path, models_dir):
    broken = tmp_path / "broken.json"
    broken.write_text('{"kind": "mfa",\n "alphabet": ["a"],,\n}')
    code, _, err = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"), "--spec", str(broken), "--init", "x,y")
    assert code == 2 and "broken.json:2:20" in err


def test_max_states_env(capsys, monkeypatch, models_dir):
    monkeypatch.setenv("PRODCHECK_MAX_STATES", "1")
    code, _, err = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "count_mfa.json"), "--init", "x,y1")
    assert code == 2 and "exceeds 1 states" in err


def test_product_command(capsys, tmp_path, models_dir):
    out = tmp_path / "p.json"
    code, _, _ = run(capsys, "product", "--mc", str(models_dir / "loop_mc.json"),
                     "--spec", str(models_dir / "count_mfa.json"), "--init", "x,y1", "--out", str(out))
    assert code == 0
    p = io.load(out)
    assert p.row_sum(("x", "y1")) == F(5, 3)
    assert mc_mfa_product(io.load(models_dir / "loop_mc.json"), io.load(models_dir / "count_mfa.json"), [("x", "y1")]) == p


def test_product_with_rejecting_dfa(capsys, models_dir):
    code, out, _ = run(capsys, "product", "--mc", str(models_dir / "loop_mc.json"),
                       "--spec", str(models_dir / "reject_all_dfa.json"))
    doc = json.loads(out)
    assert all(CHECK not in row for row in doc["trans"].values())


@pytest.mark.parametrize("a,b,count", [("bool_or", "bool_or", 2), ("bool_or", "z3", 1), ("bool_or", "max01", 2), ("bool_or", "mult01", 2)])
def test_natscan(capsys, models_dir, a, b, count):
    code, out, _ = run(capsys, "natscan", "--monoid-a", str(models_dir / f"{a}.json"),
                       "--monoid-b", str(models_dir / f"{b}.json"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == count == doc["closed_form_count"]
    assert "bounded certification" in doc["note"]
    assert all(f["parameter"] is not None for f in doc["families"])


def test_natscan_bad_monoid(capsys, tmp_path, models_dir):
    bad = tmp_path / "m.json"
    bad.write_text('{"kind": "monoid", "elements": ["e", "a"], "op": [["e", "a"], ["e", "a"]], "zero": "e"}')
    code, _, err = run(capsys, "natscan", "--monoid-a", str(bad), "--monoid-b", str(models_dir / "z3.json"))
    assert code == 2 and "unit" in err


@pytest.mark.parametrize("law", ["mfa", "dfa"])
def test_criterion_pass(capsys, law):
    code, out, _ = run(capsys, "criterion", "--law", law)
    assert code == 0 and out.strip() == f"law {law}: pass, 100/100 (seed 0)"


def test_criterion_nfa_candidate(capsys):
    code, out, _ = run(capsys, "criterion", "--law", "nfa-candidate", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "fail"
    assert (doc["witness"]["left"], doc["witness"]["right"]) == ("1", "0")


def test_criterion_nfa_candidate_bad_r(capsys):
    code, _, err = run(capsys, "criterion", "--law", "nfa-candidate", "--r", "3/2")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("criterion", "--law", "mfa", "--seed", "5", "--json"),
    ("natscan", "--monoid-a", "MODELS/bool_or.json", "--monoid-b", "MODELS/mult01.json"),
    ("check", "--mc", "MODELS/loop_mc.json", "--spec", "MODELS/count_mfa.json", "--init", "x,y1", "--oracle-depth", "8"),
])
def test_output_is_deterministic(capsys, models_dir, argv):
    argv = [a.replace("MODELS", str(models_dir)) for a in argv]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_emitted_rationals_reparse(capsys, models_dir):
    _, out, _ = run(capsys, "check", "--mc", str(models_dir / "loop_mc.json"),
                    "--spec", str(models_dir / "count_mfa.json"), "--init", "x,y1", "--oracle-depth", "10", "--json")
    doc = json.loads(out)
    for text in (doc["value"], doc["oracle"]["value"], doc["oracle"]["gap"]):
        assert format_rational(parse_rational(text)) == text
