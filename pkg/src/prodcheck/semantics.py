"""Least-fixed-point semantics, bounded oracles and the exact product solver.

Words are tuples of letters. Every bounded oracle computes its map one
length level at a time: the value of a word of length ``n`` is final after
``n`` Kleene steps, so level ``n + 1`` only needs level ``n``.

Extended values are Fractions or :data:`math.inf`, with ``inf * 0 == 0``.
"""

import math
from fractions import Fraction

from .graph import reachable, tarjan_scc
from .linalg import least_nonnegative_solution, solve_exact
from .models import CHECK, ModelError

INFINITY = math.inf

ZERO = Fraction(0)


def ext_mul(a, b):
    if a == 0 or b == 0:
        return ZERO
    return a * b


def _levels(states, depth, first, step):
    """Generic level-by-level Kleene iteration; returns ``{state: {word: value}}``."""
    if depth < 1:
        raise ModelError("depth must be >= 1")
    level = {s: first(s) for s in states}
    total = {s: dict(level[s]) for s in states}
    for _ in range(depth - 1):
        level = {s: step(s, level) for s in states}
        for s in states:
            total[s].update(level[s])
    return total


def mc_bounded_traces_all(mc, depth):
    """Trace subdistribution truncated at ``depth`` for every state at once."""

    def first(x):
        p = mc.succ[x].get(CHECK, ZERO)
        return {(mc.label[x],): p} if p else {}

    def step(x, prev):
        a = mc.label[x]
        out = {}
        for t, p in mc.succ[x].items():
            if t == CHECK or not p:
                continue
            for w, v in prev[t].items():
                key = (a,) + w
                out[key] = out.get(key, ZERO) + p * v
        return out

    return _levels(mc.states, depth, first, step)


def mc_bounded_traces(mc, x, depth):
    mc.require(x)
    return mc_bounded_traces_all(mc, depth)[x]


def mfa_bounded_multiset_all(mfa, depth):
    def first(y):
        return {(a,): mfa.delta[y][a][CHECK] for a in mfa.alphabet if mfa.delta[y][a].get(CHECK)}

    def step(y, prev):
        out = {}
        for a in mfa.alphabet:
            for t, k in mfa.delta[y][a].items():
                if t == CHECK:
                    continue
                for w, n in prev[t].items():
                    key = (a,) + w
                    out[key] = out.get(key, 0) + k * n
        return out

    return _levels(mfa.states, depth, first, step)


def mfa_bounded_multiset(mfa, y, depth):
    mfa.require(y)
    return mfa_bounded_multiset_all(mfa, depth)[y]


def _language_levels(states, alphabet, depth, accepts, successors):
    def first(y):
        return {(a,): True for a in alphabet if accepts(y, a)}

    def step(y, prev):
        out = {}
        for a in alphabet:
            for t in successors(y, a):
                for w in prev[t]:
                    out[(a,) + w] = True
        return out

    return {s: frozenset(m) for s, m in _levels(states, depth, first, step).items()}


def dfa_bounded_language(dfa, y, depth):
    dfa.require(y)
    langs = _language_levels(
        dfa.states,
        dfa.alphabet,
        depth,
        lambda s, a: dfa.delta[s][a][1],
        lambda s, a: (dfa.delta[s][a][0],),
    )
    return langs[y]


def nfa_bounded_language(nfa, y, depth):
    nfa.require(y)
    langs = _language_levels(
        nfa.states,
        nfa.alphabet,
        depth,
        lambda s, a: CHECK in nfa.delta[s][a],
        lambda s, a: sorted(nfa.delta[s][a] - {CHECK}),
    )
    return langs[y]


def infer_q_prob(sigma, lang):
    """Probability mass of the accepted words."""
    return sum((sigma.get(w, ZERO) for w in lang), ZERO)


def infer_q_expected(sigma, mu):
    """Expected number of accepting runs: sum of mu(w) * sigma(w)."""
    return sum((n * sigma[w] for w, n in mu.items() if w in sigma), ZERO)


def _reachable_states(p, init):
    p.require(init)
    return reachable([init], lambda s: (t for t in p.weight[s] if t != CHECK))


def product_value_iterate_all(p, init, steps):
    """Kleene iterates ``v_{k+1} = b + W v_k`` from 0 on the part reachable from init."""
    states = _reachable_states(p, init)
    v = {s: ZERO for s in states}
    for _ in range(steps):
        nv = {}
        for s in states:
            acc = ZERO
            for t, w in p.weight[s].items():
                acc += w if t == CHECK else w * v[t]
            nv[s] = acc
        v = nv
    return v


def product_value_iterate(p, init, steps):
    return product_value_iterate_all(p, init, steps)[init]


def pruned_states(p, init):
    """States reachable from ``init`` that can also reach CHECK."""
    states = _reachable_states(p, init)
    preds = {s: [] for s in states}
    hits = []
    for s in states:
        for t in p.weight[s]:
            if t == CHECK:
                hits.append(s)
            else:
                preds[t].append(s)
    return reachable(hits, preds.__getitem__)


def product_value_exact_all(p, init):
    """Least fixed point of ``v = b + W v`` on everything reachable from ``init``.

    States that cannot reach CHECK get 0. The rest is split into SCCs and
    solved sinks-first. Inside an SCC, ``(I - W) v = b'`` is solved exactly;
    a nonsingular system with a nonnegative solution is accepted as is.
    Otherwise the nonnegative feasibility LP decides: infeasible means the
    component diverges. Divergence then spreads backwards along every
    positive edge.
    """
    states = _reachable_states(p, init)
    alive = pruned_states(p, init)
    value = {s: ZERO for s in states if s not in alive}

    def inner(s):
        return [t for t in p.weight[s] if t != CHECK and t in alive]

    position = {s: i for i, s in enumerate(p.states)}
    order = sorted(alive, key=position.__getitem__)
    for comp in tarjan_scc(order, inner):
        members = set(comp)
        if any(
            value[t] == INFINITY
            for s in comp
            for t in inner(s)
            if t not in members
        ):
            for s in comp:
                value[s] = INFINITY
            continue
        rhs = []
        for s in comp:
            acc = ZERO
            for t, w in p.weight[s].items():
                if t == CHECK:
                    acc += w
                elif t not in members:
                    acc += ext_mul(w, value[t])
            rhs.append(acc)
        solved = _solve_component(p, comp, rhs)
        for s, v in zip(comp, solved):
            value[s] = v
    return value


def product_value_exact(p, init):
    return product_value_exact_all(p, init)[init]


def _solve_component(p, comp, rhs):
    pos = {s: i for i, s in enumerate(comp)}
    n = len(comp)
    matrix = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i, s in enumerate(comp):
        for t, w in p.weight[s].items():
            j = pos.get(t)
            if j is not None:
                matrix[i][j] -= w
    sol = solve_exact(matrix, rhs)
    if sol is not None and all(v >= 0 for v in sol):
        return sol
    sol = least_nonnegative_solution(matrix, rhs)
    if sol is None:
        return [INFINITY] * n
    return sol
