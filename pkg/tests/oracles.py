"""Brute-force reference implementations, deliberately naive.

They walk paths and runs one by one, so they share no code with the
level-by-level iteration in the library.
"""

from fractions import Fraction
from itertools import product

from prodcheck.models import CHECK


def words(alphabet, depth):
    for n in range(1, depth + 1):
        yield from product(alphabet, repeat=n)


def path_traces(mc, x, depth):
    """Sum path probabilities over every path of length <= depth ending in CHECK."""
    out = {}

    def walk(state, word, prob):
        word = word + (mc.label[state],)
        for t, p in mc.succ[state].items():
            if not p:
                continue
            if t == CHECK:
                out[word] = out.get(word, 0) + prob * p
            elif len(word) < depth:
                walk(t, word, prob * p)

    walk(x, (), Fraction(1))
    return out


def run_count(mfa, y, word):
    """Number of accepting runs of an MFA on ``word`` (multiplicities multiply)."""
    a, rest = word[0], word[1:]
    row = mfa.delta[y][a]
    if not rest:
        return row.get(CHECK, 0)
    return sum(k * run_count(mfa, t, rest) for t, k in row.items() if t != CHECK)


def nfa_run_count(nfa, y, word):
    a, rest = word[0], word[1:]
    succ = nfa.delta[y][a]
    if not rest:
        return int(CHECK in succ)
    return sum(nfa_run_count(nfa, t, rest) for t in succ if t != CHECK)


def dfa_accepts(dfa, y, word):
    for i, a in enumerate(word):
        nxt, accept = dfa.delta[y][a]
        if i == len(word) - 1:
            return accept
        y = nxt
    return False


def float_value(product, init, steps=4000):
    """Plain float value iteration, a sanity check for the exact solver."""
    v = {s: 0.0 for s in product.states}
    for _ in range(steps):
        v = {
            s: sum(float(w) * (1.0 if t == CHECK else v[t]) for t, w in product.weight[s].items())
            for s in product.states
        }
    return v[init]
