"""``prodcheck`` command line.

Subcommands::

    check      value of an MC against a DFA, NFA or MFA from an initial pair
    product    write the weighted product graph as JSON
    natscan    enumerate natural transformations between two finite monoids
    criterion  evaluate the one-step correctness equation for a law

Exit codes: 0 on success (an infinite value is an answer, not a failure),
2 for bad input, 3 when an internal invariant is found broken.
"""

import argparse
import json
import math
import os
import sys

from . import io
from .models import (
    Mfa,
    ModelError,
    Nfa,
    check_unambiguous,
    determinize,
    embed_nfa_as_mfa,
    subset_name,
    validate_mc,
)
from .natlaws.criterion import check_weight_family, dfa_criterion, mfa_criterion, no_go_witness
from .natlaws.families import extract_b
from .natlaws.monoids import MonoidError, idempotents, single_generation
from .natlaws.naturality import enumerate_nat_trans
from .product import mc_dfa_product, mc_mfa_product
from .rational import format_decimal, format_rational, parse_rational
from .semantics import (
    dfa_bounded_language,
    infer_q_expected,
    infer_q_prob,
    mc_bounded_traces,
    mfa_bounded_multiset,
    nfa_bounded_language,
    product_value_exact,
)

DEFAULT_MAX_STATES = 100000
# witness search depth for the unambiguity check of NFA specs
AMBIGUITY_DEPTH = 12

NFA_NOTICE = (
    "note: no one-step product law for MC x NFA is correct for acceptance "
    "probability (the correctness equation fails on a Dirac input, see "
    "`prodcheck criterion --law nfa-candidate`); the NFA is determinised "
    "and the DFA product is solved instead"
)


class InvariantError(RuntimeError):
    """A result that contradicts something the library guarantees."""


def max_states():
    raw = os.environ.get("PRODCHECK_MAX_STATES")
    if raw is None:
        return DEFAULT_MAX_STATES
    try:
        cap = int(raw)
    except ValueError:
        raise ModelError(f"PRODCHECK_MAX_STATES must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ModelError("PRODCHECK_MAX_STATES must be positive")
    return cap


def _value_fields(v):
    return {"value": format_rational(v), "decimal": format_decimal(v)}


def _emit(args, doc, lines):
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


def _load_mc(path):
    mc = io.load(path, expect=("mc",))
    report = validate_mc(mc)
    if not report.ok:
        raise io.InputError("; ".join(report.violations), str(path))
    return mc


def _parse_init(text):
    x, sep, y = text.partition(",")
    if not sep or not x or not y:
        raise ModelError(f"--init must be MCSTATE,SPECSTATE, got {text!r}")
    return x.strip(), y.strip()


def _build(mc, spec, init):
    """Product for a DFA or MFA spec; returns ``(product, start)``."""
    cap = max_states()
    if isinstance(spec, Mfa):
        return mc_mfa_product(mc, spec, [init] if init else None, cap), init
    return mc_dfa_product(mc, spec, [init] if init else None, cap), init


def _as_dfa(nfa, init):
    """Determinise from the initial NFA state (or all singletons) and move ``init`` along."""
    if init is None:
        return determinize(nfa), None
    x, y = init
    nfa.require(y)
    return determinize(nfa, [y]), (x, subset_name(nfa, {y}))


def _oracle(mc, spec, init, depth):
    x, y = init
    traces = mc_bounded_traces(mc, x, depth)
    if isinstance(spec, Mfa):
        return infer_q_expected(traces, mfa_bounded_multiset(spec, y, depth))
    if isinstance(spec, Nfa):
        return infer_q_prob(traces, nfa_bounded_language(spec, y, depth))
    return infer_q_prob(traces, dfa_bounded_language(spec, y, depth))


def cmd_check(args):
    mc = _load_mc(args.mc)
    spec = io.load(args.spec, expect=("dfa", "nfa", "mfa"))
    init = _parse_init(args.init)
    mc.require(init[0])
    spec.require(init[1])
    doc = {"init": list(init)}
    lines = []
    if isinstance(spec, Nfa):
        print(NFA_NOTICE, file=sys.stderr)
        dfa, start = _as_dfa(spec, init)
        product, start = _build(mc, dfa, start)
        doc.update(spec_kind="nfa", route="determinize", dfa_states=len(dfa.states))
    else:
        product, start = _build(mc, spec, init)
        doc["spec_kind"] = "mfa" if isinstance(spec, Mfa) else "dfa"
    value = product_value_exact(product, start)
    doc.update(_value_fields(value), product_states=len(product.states))
    lines += [f"value: {format_rational(value)}", f"decimal: {format_decimal(value)}"]
    lines.append(f"product states: {len(product.states)}")

    if not isinstance(spec, Mfa) and not 0 <= value <= 1:
        raise InvariantError(f"acceptance probability {format_rational(value)} outside [0, 1]")

    if isinstance(spec, Nfa):
        amb = check_unambiguous(spec, AMBIGUITY_DEPTH, [init[1]])
        doc["unambiguous"] = amb.unambiguous
        if amb.unambiguous:
            mfa = embed_nfa_as_mfa(spec)
            other = product_value_exact(mc_mfa_product(mc, mfa, [init], max_states()), init)
            doc["mfa_route_value"] = format_rational(other)
            if other != value:
                raise InvariantError(
                    f"determinize route gives {format_rational(value)} but the MFA route gives "
                    f"{format_rational(other)} on an unambiguous NFA"
                )
            lines.append("unambiguous: yes; MFA route agrees exactly")
        else:
            witness = "".join(amb.witness) if amb.witness else None
            doc["ambiguity_witness"] = witness
            lines.append(
                "unambiguous: no"
                + (f" (two accepting runs on {witness!r})" if witness else "")
            )

    if args.oracle_depth is not None:
        if args.oracle_depth < 1:
            raise ModelError("--oracle-depth must be at least 1")
        oracle = _oracle(mc, spec, init, args.oracle_depth)
        if oracle > value:
            raise InvariantError(
                f"truncated oracle {format_rational(oracle)} exceeds the exact value {format_rational(value)}"
            )
        gap = math.inf if value == math.inf else value - oracle
        doc["oracle"] = {"depth": args.oracle_depth, **_value_fields(oracle), "gap": format_rational(gap),
                         "gap_decimal": format_decimal(gap)}
        lines.append(f"oracle (depth {args.oracle_depth}): {format_rational(oracle)} ~ {format_decimal(oracle)}")
        lines.append(f"gap: {format_rational(gap)} ~ {format_decimal(gap)}")
    _emit(args, doc, lines)
    return 0


def cmd_product(args):
    mc = _load_mc(args.mc)
    spec = io.load(args.spec, expect=("dfa", "nfa", "mfa"))
    init = _parse_init(args.init) if args.init else None
    if init:
        mc.require(init[0])
        spec.require(init[1])
    if isinstance(spec, Nfa):
        print(NFA_NOTICE, file=sys.stderr)
        spec, init = _as_dfa(spec, init)
    product, _ = _build(mc, spec, init)
    text = io.dumps(product)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {len(product.states)} product states to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _show(e):
    return e if isinstance(e, str) else json.dumps(e)


def _parameter(family):
    """Recovered parameter table, or None when the source is not singly generated."""
    gen = single_generation(family.source)
    if gen is None or (gen.case != 1 and gen.cycle is None):
        return None
    return extract_b(family, verify_size=0)


def cmd_natscan(args):
    a = io.load(args.monoid_a, expect=("monoid",))
    b = io.load(args.monoid_b, expect=("monoid",))
    if args.max_set < 3:
        raise ModelError("--max-set must be at least 3")
    families = enumerate_nat_trans(a, b, args.max_set)
    gen = single_generation(a)
    closed_form = None
    if gen is not None and gen.cycle is not None:
        n = gen.cycle
        closed_form = len(idempotents(b, n)) ** (n - 1)
    note = (
        f"bounded certification: every square for maps between sets of size <= {args.max_set} "
        "commutes; sizes above that are not checked"
    )
    doc = {"source": a.name, "target": b.name, "max_set": args.max_set, "count": len(families),
           "closed_form_count": closed_form, "note": note, "families": []}
    lines = [f"{a.name} => {b.name}: {len(families)} natural {'family' if len(families) == 1 else 'families'}"]
    if closed_form is not None:
        lines.append(f"parameter-space count from the cyclic formula: {closed_form}")
    for i, fam in enumerate(families):
        table = fam.table2()
        param = _parameter(fam)
        doc["families"].append({
            "table": [[[_show(k) for k in key], [_show(v) for v in val]] for key, val in table.items()],
            "parameter": None if param is None else [_show(v) for v in param],
        })
        lines.append(f"family {i}:")
        for key, val in table.items():
            lines.append(f"  ({_show(key[0])}, {_show(key[1])}) -> ({_show(val[0])}, {_show(val[1])})")
        if param is not None:
            lines.append("  b = (" + ", ".join(_show(v) for v in param) + ")")
    lines.append(note)
    _emit(args, doc, lines)
    return 0


def _counterexample_text(cx):
    return f"letter {cx.letter!r}: left {format_rational(cx.left)}, right {format_rational(cx.right)}"


def cmd_criterion(args):
    if args.law in ("mfa", "dfa"):
        run = mfa_criterion if args.law == "mfa" else dfa_criterion
        result = run(args.samples, args.seed)
        verdict = "pass" if result.ok else "fail"
        doc = {"law": args.law, "seed": args.seed, "verdict": verdict,
               "passed": result.passed, "total": result.total}
        lines = [f"law {args.law}: {verdict}, {result.passed}/{result.total} (seed {args.seed})"]
        if not result.ok:
            doc["counterexample"] = _counterexample_text(result.counterexample)
            lines.append("first counterexample: " + doc["counterexample"])
        _emit(args, doc, lines)
        if not result.ok:
            raise InvariantError(f"the {args.law} law failed the correctness equation")
        return 0

    r = parse_rational(args.r)
    word = tuple(args.word)
    family_left, family_forced = check_weight_family(r, args.letter)
    report = no_go_witness(r, args.letter, word)
    shapes = [
        "forced CHECK part: (1 - sum sigma) * [CHECK in delta(a)]",
        "forced pair part: 0 (the only c >= 0 with 2c = c is 0)",
    ]
    verdict = "fail" if report.contradiction else "pass"
    doc = {
        "law": "nfa-candidate",
        "verdict": verdict,
        "forced_shapes": shapes,
        "check_family": {"left": format_rational(family_left), "forced": format_rational(family_forced)},
        "witness": {"r": format_rational(r), "letter": args.letter, "word": "".join(word),
                    "left": format_rational(report.left), "right": format_rational(report.right)},
    }
    lines = [f"law nfa-candidate: {verdict}"] + shapes + [
        f"check family (mass {format_rational(r)} on the empty trace subdistribution): "
        f"left {format_rational(family_left)} = forced {format_rational(family_forced)}",
        f"witness r = {format_rational(r)}, letter {args.letter!r}, word {''.join(word)!r}: "
        f"left {format_rational(report.left)}, right {format_rational(report.right)}",
    ]
    if report.contradiction:
        lines.append("contradiction: no law of this shape satisfies the equation")
    _emit(args, doc, lines)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="prodcheck", description="Exact model checking via product constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="value of an MC against an automaton")
    p.add_argument("--mc", required=True)
    p.add_argument("--spec", required=True, help="dfa, nfa or mfa file")
    p.add_argument("--init", required=True, metavar="MCSTATE,SPECSTATE")
    p.add_argument("--oracle-depth", type=int, metavar="K")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("product", help="write the weighted product graph")
    p.add_argument("--mc", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--init", metavar="MCSTATE,SPECSTATE", help="keep only pairs reachable from here")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(run=cmd_product)

    p = sub.add_parser("natscan", help="enumerate natural transformations F_A => F_B")
    p.add_argument("--monoid-a", required=True)
    p.add_argument("--monoid-b", required=True)
    p.add_argument("--max-set", type=int, default=4, metavar="K")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_natscan)

    p = sub.add_parser("criterion", help="evaluate the correctness equation for a law")
    p.add_argument("--law", required=True, choices=("mfa", "dfa", "nfa-candidate"))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", default="1", help="mass of the Dirac witness (nfa-candidate)")
    p.add_argument("--letter", default="a")
    p.add_argument("--word", default="a", help="witness word, one character per letter")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_criterion)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InvariantError as exc:
        print(f"internal invariant broken: {exc}", file=sys.stderr)
        return 3
    except (ModelError, MonoidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
