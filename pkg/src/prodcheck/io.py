"""JSON model files.

Every document has a top-level ``"kind"``: one of ``mc``, ``dfa``, ``nfa``,
``mfa``, ``monoid`` or ``product``. Rationals are strings ``"p/q"`` or
``"p"`` (plain JSON integers are accepted too). Missing transition entries
mean weight 0, multiplicity 0 or the empty set.

Products name their states ``"(x,y)"`` and keep the pair itself under
``"pairs"`` so that re-loading gives back the same tuples.
"""

import json

from .models import CHECK, Dfa, LabelledMC, Mfa, ModelError, Nfa
from .natlaws.monoids import FinMonoid, MonoidError
from .product import WeightedProduct
from .rational import format_rational, parse_rational

KINDS = ("mc", "dfa", "nfa", "mfa", "monoid", "product")


class InputError(ModelError):
    """A model file that cannot be read: bad JSON or a schema violation."""

    def __init__(self, message, source=None, line=None, column=None):
        where = source or "<input>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line
        self.column = column


def _expect(value, kind, path):
    if not isinstance(value, kind):
        name = {dict: "an object", list: "a list", str: "a string", bool: "a boolean"}[kind]
        raise ModelError(f"{path}: expected {name}, got {type(value).__name__}")
    return value


def _field(doc, key, kind, path=""):
    if key not in doc:
        raise ModelError(f"missing field {path + key!r}")
    return _expect(doc[key], kind, path + key)


def _names(doc):
    alphabet = _field(doc, "alphabet", list)
    states = _field(doc, "states", list)
    for i, s in enumerate(alphabet):
        _expect(s, str, f"alphabet[{i}]")
    for i, s in enumerate(states):
        _expect(s, str, f"states[{i}]")
    return states, alphabet


def _rational(text, path):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise ModelError(f"{path}: {exc}") from None


def _mc(doc):
    states, alphabet = _names(doc)
    label = {}
    for x, a in _field(doc, "label", dict).items():
        label[x] = _expect(a, str, f"label.{x}")
    succ = {}
    for x, row in _field(doc, "trans", dict).items():
        _expect(row, dict, f"trans.{x}")
        succ[x] = {t: _rational(p, f"trans.{x}.{t}") for t, p in row.items()}
    return LabelledMC(states, alphabet, label, succ)


def _delta(doc):
    delta = _field(doc, "delta", dict)
    for y, row in delta.items():
        _expect(row, dict, f"delta.{y}")
    return delta


def _dfa(doc):
    states, alphabet = _names(doc)
    delta = {}
    for y, row in _delta(doc).items():
        delta[y] = {}
        for a, step in row.items():
            path = f"delta.{y}.{a}"
            _expect(step, dict, path)
            delta[y][a] = (
                _field(step, "to", str, path + "."),
                _field(step, "accept", bool, path + "."),
            )
    return Dfa(states, alphabet, delta)


def _nfa(doc):
    states, alphabet = _names(doc)
    delta = {}
    for y, row in _delta(doc).items():
        delta[y] = {}
        for a, targets in row.items():
            _expect(targets, list, f"delta.{y}.{a}")
            delta[y][a] = set(targets)
    return Nfa(states, alphabet, delta)


def _mfa(doc):
    states, alphabet = _names(doc)
    delta = {}
    for y, row in _delta(doc).items():
        delta[y] = {}
        for a, counts in row.items():
            _expect(counts, dict, f"delta.{y}.{a}")
            delta[y][a] = dict(counts)
    return Mfa(states, alphabet, delta)


def _monoid(doc):
    elements = _field(doc, "elements", list)
    op = _field(doc, "op", list)
    if "zero" not in doc:
        raise ModelError("missing field 'zero'")
    return FinMonoid.from_names(elements, op, doc["zero"], doc.get("name"))


def _product(doc):
    states, alphabet = _names(doc)
    pairs = _field(doc, "pairs", dict)
    lookup = {}
    for name in states:
        if name not in pairs:
            raise ModelError(f"pairs: no pair for state {name!r}")
        pair = _expect(pairs[name], list, f"pairs.{name}")
        if len(pair) != 2:
            raise ModelError(f"pairs.{name}: expected [mc_state, spec_state]")
        lookup[name] = tuple(pair)
    weight = {lookup[name]: {} for name in states}
    for name, row in _field(doc, "trans", dict).items():
        if name not in lookup:
            raise ModelError(f"trans: unknown product state {name!r}")
        _expect(row, dict, f"trans.{name}")
        for t, w in row.items():
            if t != CHECK and t not in lookup:
                raise ModelError(f"trans.{name}: unknown target {t!r}")
            w = _rational(w, f"trans.{name}.{t}")
            if w < 0:
                raise ModelError(f"trans.{name}.{t}: negative weight")
            if w:
                weight[lookup[name]][CHECK if t == CHECK else lookup[t]] = w
    return WeightedProduct(tuple(lookup[n] for n in states), tuple(alphabet), weight)


_LOADERS = {"mc": _mc, "dfa": _dfa, "nfa": _nfa, "mfa": _mfa, "monoid": _monoid, "product": _product}


def loads(text, source=None, expect=None):
    """Parse a model document; ``expect`` restricts the allowed kinds."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, source, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise InputError("top level must be an object", source)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError(f"'kind' must be one of {', '.join(KINDS)}, got {kind!r}", source)
    if expect is not None and kind not in expect:
        raise InputError(f"expected kind {' or '.join(expect)}, got {kind!r}", source)
    try:
        return _LOADERS[kind](doc)
    except (ModelError, MonoidError) as exc:
        raise InputError(str(exc), source) from None


def load(path, expect=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), str(path)) from None
    return loads(text, str(path), expect)


def _common(kind, model):
    return {"kind": kind, "alphabet": list(model.alphabet), "states": list(model.states)}


def to_doc(model):
    """The JSON-ready dict for a model, product or finite monoid."""
    if isinstance(model, LabelledMC):
        doc = _common("mc", model)
        doc["label"] = {x: model.label[x] for x in model.states if x in model.label}
        doc["trans"] = {
            x: {t: format_rational(p) for t, p in model.succ[x].items()} for x in model.states
        }
        return doc
    if isinstance(model, Dfa):
        doc = _common("dfa", model)
        doc["delta"] = {
            y: {a: {"to": nxt, "accept": acc} for a, (nxt, acc) in row.items()}
            for y, row in model.delta.items()
        }
        return doc
    if isinstance(model, Nfa):
        doc = _common("nfa", model)
        order = {s: i for i, s in enumerate(model.states + (CHECK,))}
        doc["delta"] = {
            y: {a: sorted(ts, key=order.__getitem__) for a, ts in row.items() if ts}
            for y, row in model.delta.items()
        }
        return doc
    if isinstance(model, Mfa):
        doc = _common("mfa", model)
        doc["delta"] = {
            y: {a: dict(c) for a, c in row.items() if c} for y, row in model.delta.items()
        }
        return doc
    if isinstance(model, WeightedProduct):
        return _product_doc(model)
    if isinstance(model, FinMonoid):
        e = model.elements
        return {
            "kind": "monoid",
            "name": model.name,
            "elements": list(e),
            "op": [[e[v] for v in row] for row in model.table],
            "zero": model.zero,
        }
    raise TypeError(f"cannot serialise {type(model).__name__}")


def pair_name(pair):
    return f"({pair[0]},{pair[1]})"


def _product_doc(p):
    names = {}
    used = set()
    for s in p.states:
        name = base = pair_name(s)
        k = 1
        while name in used or name == CHECK:
            k += 1
            name = f"{base}#{k}"
        used.add(name)
        names[s] = name
    names[CHECK] = CHECK
    return {
        "kind": "product",
        "alphabet": list(p.alphabet),
        "states": [names[s] for s in p.states],
        "pairs": {names[s]: list(s) for s in p.states},
        "trans": {
            names[s]: {names[t]: format_rational(w) for t, w in p.weight[s].items()}
            for s in p.states
        },
    }


def dumps(model):
    return json.dumps(to_doc(model), indent=2) + "\n"


def dump(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(model))
