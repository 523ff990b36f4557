"""Product constructions of a labelled MC with a DFA or an MFA.

Both products are obtained by applying a one-step law to the pair of rows
``(succ(x), label(x))`` and ``delta(y)``. The laws are exposed on their own
(:func:`dfa_law`, :func:`mfa_law`) because they are generic in the state
sets; the criterion checker in :mod:`prodcheck.natlaws.criterion` evaluates
the very same functions on semantic values.

No product is offered for NFAs: no law of this shape is correct for
acceptance probability. Determinise first.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .models import CHECK, ModelError

SINK = "SINK"


def dfa_law(sigma, letter, delta):
    """Route MC mass through the DFA step taken on ``letter``.

    ``sigma`` maps successors (or CHECK) to probabilities, ``delta`` maps
    letters to ``(next, accept)``. Returns weights keyed by pairs and CHECK.
    """
    nxt, accept = delta[letter]
    out = {}
    for x, p in sigma.items():
        if x == CHECK:
            if accept and p:
                out[CHECK] = out.get(CHECK, 0) + p
        elif p:
            out[(x, nxt)] = out.get((x, nxt), 0) + p
    return out


def mfa_law(sigma, letter, delta, perturb=None):
    """Multiply MC probabilities with MFA multiplicities pointwise.

    ``delta[letter]`` maps successors (or CHECK) to multiplicities. Mixed
    terms (CHECK on one side only) get weight 0. ``perturb`` optionally adds
    a constant to the CHECK weight; only used to show that a modified law
    breaks the correctness equation.
    """
    row = delta[letter]
    out = {}
    for x, p in sigma.items():
        if not p:
            continue
        if x == CHECK:
            k = row.get(CHECK, 0)
            if k:
                out[CHECK] = out.get(CHECK, 0) + k * p
            continue
        for y, k in row.items():
            if y != CHECK and k:
                out[(x, y)] = out.get((x, y), 0) + k * p
    if perturb:
        out[CHECK] = out.get(CHECK, 0) + perturb
    return out


@dataclass(frozen=True)
class WeightedProduct:
    """Finite weighted graph over pair-states with a CHECK target.

    ``weight[s]`` only holds positive entries. Rows may sum past 1.
    """

    states: tuple
    alphabet: tuple
    weight: dict

    def require(self, s):
        if s not in self.weight:
            raise ModelError(f"unknown product state {s!r}")

    def row_sum(self, s):
        return sum(self.weight[s].values(), Fraction(0))

    def edges(self):
        for s in self.states:
            for t, w in self.weight[s].items():
                yield s, t, w


def _check_alphabets(mc, spec):
    if set(mc.alphabet) != set(spec.alphabet):
        raise ModelError(
            f"alphabet mismatch: MC has {sorted(mc.alphabet)}, automaton has {sorted(spec.alphabet)}"
        )


def _build(mc, spec, law, initial, max_states):
    _check_alphabets(mc, spec)
    if initial is None:
        frontier = [(x, y) for x in mc.states for y in spec.states]
    else:
        frontier = []
        for x, y in initial:
            mc.require(x)
            spec.require(y)
            frontier.append((x, y))
    weight = {}
    order = []
    queue = deque(frontier)
    while queue:
        s = queue.popleft()
        if s in weight:
            continue
        if max_states is not None and len(order) >= max_states:
            raise ModelError(f"product exceeds {max_states} states")
        x, y = s
        row = law(mc.succ[x], mc.label[x], spec.delta[y])
        weight[s] = {t: Fraction(w) for t, w in row.items() if w}
        order.append(s)
        for t in weight[s]:
            if t != CHECK and t not in weight:
                queue.append(t)
    return WeightedProduct(tuple(order), mc.alphabet, weight)


def mc_dfa_product(mc, dfa, initial=None, max_states=None):
    """Standard MC x DFA product; restricted to pairs reachable from ``initial`` if given."""
    return _build(mc, dfa, dfa_law, initial, max_states)


def mc_mfa_product(mc, mfa, initial=None, max_states=None):
    """MC x MFA product; ``max_states`` aborts with ModelError once exceeded."""
    return _build(mc, mfa, mfa_law, initial, max_states)


@dataclass(frozen=True)
class RewardMC:
    """Stochastic chain with a per-state multiplicative reward."""

    states: tuple
    prob: dict
    reward: dict
    sink: str = None


def normalize_to_reward_mc(p):
    """Turn row weights into probabilities and pull the row total out as a reward.

    Rows of total 0 are sent to a fresh absorbing SINK with reward 0.
    """
    prob = {}
    reward = {}
    needs_sink = False
    for s in p.states:
        total = p.row_sum(s)
        if total > 0:
            prob[s] = {t: w / total for t, w in p.weight[s].items()}
            reward[s] = total
        else:
            prob[s] = {SINK: Fraction(1)}
            reward[s] = Fraction(0)
            needs_sink = True
    states = p.states
    if needs_sink:
        prob[SINK] = {SINK: Fraction(1)}
        reward[SINK] = Fraction(0)
        states = states + (SINK,)
    return RewardMC(states, prob, reward, SINK if needs_sink else None)
