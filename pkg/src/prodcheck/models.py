"""Labelled Markov chains and finite automata over a shared alphabet.

The termination target is written ``CHECK`` everywhere a successor can be
either a state or the target. State names are strings; ``CHECK`` is reserved.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

CHECK = "CHECK"


class ModelError(ValueError):
    """Malformed model or bad argument (unknown state, alphabet mismatch...)."""


def _check_names(kind, states, alphabet):
    if not alphabet:
        raise ModelError(f"{kind}: alphabet must be non-empty")
    if len(set(alphabet)) != len(alphabet):
        raise ModelError(f"{kind}: duplicate letters in alphabet")
    if any(not isinstance(a, str) or not a for a in alphabet):
        raise ModelError(f"{kind}: letters must be non-empty strings")
    if len(set(states)) != len(states):
        raise ModelError(f"{kind}: duplicate state names")
    if CHECK in states:
        raise ModelError(f"{kind}: state name {CHECK!r} is reserved")


@dataclass(frozen=True)
class LabelledMC:
    """Each state emits one letter and moves by a substochastic row.

    ``succ[x]`` maps successor states (or CHECK) to probabilities; missing
    entries are 0 and any missing mass is deadlock. Use :func:`validate_mc`
    to check the substochastic invariant; the constructor only normalises
    containers so that invalid chains can still be reported on.
    """

    states: tuple
    alphabet: tuple
    label: dict
    succ: dict

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "label", dict(self.label))
        rows = {}
        for x in self.states:
            rows[x] = {t: Fraction(p) for t, p in self.succ.get(x, {}).items()}
        for x, row in self.succ.items():
            if x not in rows:
                rows[x] = {t: Fraction(p) for t, p in row.items()}
        object.__setattr__(self, "succ", rows)

    def require(self, x):
        if x not in self.label or x not in self.states:
            raise ModelError(f"unknown MC state {x!r}")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_mc(mc):
    """Report every state breaking substochasticity, label totality or key validity."""
    problems = []
    try:
        _check_names("mc", mc.states, mc.alphabet)
    except ModelError as exc:
        problems.append(str(exc))
    declared = set(mc.states)
    for x in mc.states:
        if x not in mc.label:
            problems.append(f"missing label at {x}")
        elif mc.label[x] not in mc.alphabet:
            problems.append(f"label {mc.label[x]!r} at {x} not in alphabet")
        row = mc.succ.get(x, {})
        for target, p in row.items():
            if target != CHECK and target not in declared:
                problems.append(f"unknown successor {target!r} at {x}")
            if p < 0:
                problems.append(f"negative probability at {x} -> {target}")
        if sum(row.values(), Fraction(0)) > 1:
            problems.append(f"mass exceeds 1 at {x}")
    for x in mc.succ:
        if x not in declared:
            problems.append(f"transitions given for undeclared state {x!r}")
    return ValidationReport(tuple(problems))


@dataclass(frozen=True)
class Dfa:
    """Mealy-style DFA: ``delta[y][a] = (next_state, accept)``."""

    states: tuple
    alphabet: tuple
    delta: dict

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        _check_names("dfa", self.states, self.alphabet)
        declared = set(self.states)
        table = {}
        for y in self.states:
            row = self.delta.get(y, {})
            table[y] = {}
            for a in self.alphabet:
                if a not in row:
                    raise ModelError(f"dfa: no transition from {y!r} on {a!r}")
                nxt, accept = row[a]
                if nxt not in declared:
                    raise ModelError(f"dfa: unknown target {nxt!r} from {y!r}")
                table[y][a] = (nxt, bool(accept))
        object.__setattr__(self, "delta", table)

    def require(self, y):
        if y not in self.delta:
            raise ModelError(f"unknown DFA state {y!r}")


@dataclass(frozen=True)
class Nfa:
    """``delta[y][a]`` is a frozenset of states and possibly CHECK."""

    states: tuple
    alphabet: tuple
    delta: dict

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        _check_names("nfa", self.states, self.alphabet)
        allowed = set(self.states) | {CHECK}
        table = {}
        for y in self.states:
            row = self.delta.get(y, {})
            table[y] = {}
            for a in self.alphabet:
                targets = frozenset(row.get(a, ()))
                if not targets <= allowed:
                    raise ModelError(f"nfa: unknown targets {sorted(targets - allowed)} from {y!r}")
                table[y][a] = targets
        object.__setattr__(self, "delta", table)

    def require(self, y):
        if y not in self.delta:
            raise ModelError(f"unknown NFA state {y!r}")


@dataclass(frozen=True)
class Mfa:
    """``delta[y][a]`` maps states and CHECK to natural multiplicities."""

    states: tuple
    alphabet: tuple
    delta: dict

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        _check_names("mfa", self.states, self.alphabet)
        allowed = set(self.states) | {CHECK}
        table = {}
        for y in self.states:
            row = self.delta.get(y, {})
            table[y] = {}
            for a in self.alphabet:
                counts = {}
                for t, k in row.get(a, {}).items():
                    if t not in allowed:
                        raise ModelError(f"mfa: unknown target {t!r} from {y!r}")
                    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                        raise ModelError(f"mfa: multiplicity must be a natural number, got {k!r}")
                    if k:
                        counts[t] = k
                table[y][a] = counts
        object.__setattr__(self, "delta", table)

    def require(self, y):
        if y not in self.delta:
            raise ModelError(f"unknown MFA state {y!r}")


def subset_name(nfa, subset):
    order = {y: i for i, y in enumerate(nfa.states)}
    return "{" + ",".join(sorted(subset, key=order.__getitem__)) + "}"


def determinize(nfa, initial=None):
    """Subset construction over the subsets reachable from ``{y}`` for y in ``initial``.

    A DFA transition accepts iff CHECK is among the NFA successors. DFA states
    are named by :func:`subset_name`, e.g. ``"{y1,y2}"``; the empty subset
    ``"{}"`` is a rejecting sink.
    """
    starts = list(nfa.states if initial is None else initial)
    for y in starts:
        nfa.require(y)
    seen = {}
    queue = deque()
    for y in starts:
        s = frozenset([y])
        if s not in seen:
            seen[s] = subset_name(nfa, s)
            queue.append(s)
    delta = {}
    while queue:
        subset = queue.popleft()
        row = {}
        for a in nfa.alphabet:
            targets = set()
            for y in subset:
                targets |= nfa.delta[y][a]
            accept = CHECK in targets
            nxt = frozenset(targets - {CHECK})
            if nxt not in seen:
                seen[nxt] = subset_name(nfa, nxt)
                queue.append(nxt)
            row[a] = (seen[nxt], accept)
        delta[seen[subset]] = row
    return Dfa(tuple(seen.values()), nfa.alphabet, delta)


def embed_nfa_as_mfa(nfa):
    delta = {
        y: {a: {t: 1 for t in nfa.delta[y][a]} for a in nfa.alphabet}
        for y in nfa.states
    }
    return Mfa(nfa.states, nfa.alphabet, delta)


def dfa_as_nfa(dfa):
    delta = {}
    for y in dfa.states:
        delta[y] = {}
        for a in dfa.alphabet:
            nxt, accept = dfa.delta[y][a]
            delta[y][a] = {nxt, CHECK} if accept else {nxt}
    return Nfa(dfa.states, dfa.alphabet, delta)


@dataclass(frozen=True)
class AmbiguityReport:
    unambiguous: bool
    witness: tuple = None
    initial: str = None

    def __bool__(self):
        return self.unambiguous


def check_unambiguous(nfa, depth, initial=None):
    """Decide whether every word has at most one accepting run.

    Works on the self-product of the NFA with a flag recording whether the two
    runs have split. The decision is exact; ``depth`` only caps the length of
    the reported witness (the shortest ambiguous word, found by BFS).
    """
    if depth < 1:
        raise ModelError("depth must be >= 1")
    starts = list(nfa.states if initial is None else initial)
    for y in starts:
        nfa.require(y)

    for y0 in starts:
        start = (y0, y0, False)
        parent = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            p, q, split = node
            for a in nfa.alphabet:
                if split and CHECK in nfa.delta[p][a] and CHECK in nfa.delta[q][a]:
                    word = _path_word(parent, node) + (a,)
                    return AmbiguityReport(False, word if len(word) <= depth else None, y0)
            for a in nfa.alphabet:
                succ_p = nfa.delta[p][a] - {CHECK}
                succ_q = nfa.delta[q][a] - {CHECK}
                for p2, q2 in cartesian(sorted(succ_p), sorted(succ_q)):
                    nxt = (p2, q2, split or p2 != q2)
                    if nxt not in parent:
                        parent[nxt] = (node, a)
                        queue.append(nxt)
    return AmbiguityReport(True)


def _path_word(parent, node):
    letters = []
    while parent[node] is not None:
        node, a = parent[node]
        letters.append(a)
    return tuple(reversed(letters))
