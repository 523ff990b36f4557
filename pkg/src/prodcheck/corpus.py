"""Seeded random models for tests, the acceptance suite and benchmarks.

All randomness goes through :class:`prodcheck.rng.Lcg`, so a seed names the
same corpus on every platform.
"""

from fractions import Fraction

from .models import CHECK, LabelledMC, Mfa, Nfa
from .product import mc_mfa_product
from .rng import Lcg
from .semantics import pruned_states

ALPHABET = ("a", "b")
# probabilities are multiples of 1/12 so rows stay exact and small
GRAIN = 12


def _split(rng, mass, parts):
    """Split ``mass`` (in grains) into ``parts`` nonnegative grain counts."""
    cuts = sorted(rng.below(mass + 1) for _ in range(parts - 1))
    bounds = [0] + cuts + [mass]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def random_mc(rng, n_states, alphabet=ALPHABET, stop_min=0, deadlock=True):
    """Random substochastic MC.

    Each state stops with at least ``stop_min``/12 probability, moves to one
    or two successors with the rest, and with ``deadlock`` may keep back up
    to 1/12 as deadlock mass.
    """
    states = tuple(f"x{i}" for i in range(n_states))
    label = {x: rng.choice(alphabet) for x in states}
    succ = {}
    for x in states:
        total = GRAIN - (rng.below(2) if deadlock else 0)
        stop = stop_min + rng.below(total - stop_min + 1)
        targets = rng.sample(states, 1 + rng.below(min(2, n_states)))
        row = {CHECK: Fraction(stop, GRAIN)} if stop else {}
        for t, g in zip(targets, _split(rng, total - stop, len(targets))):
            if g:
                row[t] = row.get(t, 0) + Fraction(g, GRAIN)
        succ[x] = row
    return LabelledMC(states, alphabet, label, succ)


def random_mfa(rng, n_states, alphabet=ALPHABET, max_mult=2, max_targets=2):
    """Random MFA; each (state, letter) row has 1..max_targets targets."""
    states = tuple(f"y{i}" for i in range(n_states))
    delta = {}
    for y in states:
        delta[y] = {}
        for a in alphabet:
            targets = rng.sample(states + (CHECK,), 1 + rng.below(max_targets))
            delta[y][a] = {t: 1 + rng.below(max_mult) for t in targets}
    return Mfa(states, alphabet, delta)


def random_nfa(rng, n_states, alphabet=ALPHABET, density=(1, 3)):
    states = tuple(f"y{i}" for i in range(n_states))
    delta = {
        y: {a: {t for t in states + (CHECK,) if rng.chance(*density)} for a in alphabet}
        for y in states
    }
    return Nfa(states, alphabet, delta)


def max_pruned_row_sum(product, init):
    alive = pruned_states(product, init)
    if not alive:
        return Fraction(0)
    return max(product.row_sum(s) for s in alive)


def convergent_pairs(count=50, seed=2024, bound=Fraction(9, 10)):
    """MC/MFA pairs (<= 5 and <= 3 states, multiplicities <= 2) whose pruned
    product from ``(x0, y0)`` has every row summing to at most ``bound``.

    Only pairs whose pruned product contains a cycle are kept, so that every
    instance needs a genuine linear solve rather than a DAG sweep.
    """
    rng = Lcg(seed)
    out = []
    while len(out) < count:
        mc = random_mc(rng, 1 + rng.below(5))
        mfa = random_mfa(rng, 1 + rng.below(3))
        init = ("x0", "y0")
        prod = mc_mfa_product(mc, mfa, [init])
        alive = pruned_states(prod, init)
        if not any(t in alive for s in alive for t in prod.weight[s]):
            continue
        if max_pruned_row_sum(prod, init) <= bound:
            out.append((mc, mfa, init))
    return out


def strongly_divergent_component(product, init, threshold=Fraction(3, 2)):
    """A nontrivial SCC of the pruned product in which every row, counted
    inside the SCC only, sums to at least ``threshold`` (or None).

    With threshold >= 1 such a component forces divergence: its weight
    matrix has spectral radius at least the minimum row sum.
    """
    from .graph import tarjan_scc

    alive = pruned_states(product, init)
    inner = lambda s: [t for t in product.weight[s] if t != CHECK and t in alive]
    for comp in tarjan_scc(sorted(alive), inner):
        members = set(comp)
        if len(comp) == 1 and comp[0] not in product.weight[comp[0]]:
            continue
        if all(
            sum((w for t, w in product.weight[s].items() if t in members), Fraction(0)) >= threshold
            for s in comp
        ):
            return comp
    return None


def divergent_pairs(count=10, seed=7, threshold=Fraction(3, 2)):
    """Seeded pairs whose product has a strongly divergent component feeding CHECK."""
    rng = Lcg(seed)
    out = []
    while len(out) < count:
        mc = random_mc(rng, 1 + rng.below(4), stop_min=1)
        mfa = random_mfa(rng, 1 + rng.below(3), max_mult=3, max_targets=3)
        init = ("x0", "y0")
        prod = mc_mfa_product(mc, mfa, [init])
        if strongly_divergent_component(prod, init, threshold) is not None:
            out.append((mc, mfa, init))
    return out


def layered_mc(rng, levels, block=3, alphabet=ALPHABET):
    """Chain of small blocks: each state loops inside its block and moves on
    to the next block, so SCCs stay small while the chain is long."""
    states = tuple(f"x{i}" for i in range(levels * block))
    label = {x: rng.choice(alphabet) for x in states}
    succ = {}
    for i, x in enumerate(states):
        b = i // block
        inside = states[b * block + (i + 1) % block]
        row = {inside: Fraction(1, 4), CHECK: Fraction(1, 4)}
        if b + 1 < levels:
            row[states[(b + 1) * block + rng.below(block)]] = Fraction(1, 4)
        succ[x] = row
    return LabelledMC(states, alphabet, label, succ)


def scaling_instance(seed=11, levels=134, block=3, mfa_states=5):
    """Seeded MC/MFA pair whose product reachable from (x0, y0) has ~2000 states."""
    rng = Lcg(seed)
    mc = layered_mc(rng, levels, block)
    states = tuple(f"y{i}" for i in range(mfa_states))
    delta = {}
    for i, y in enumerate(states):
        delta[y] = {}
        for a in ALPHABET:
            row = {states[(i + 1) % mfa_states]: 1, CHECK: 1}
            if rng.chance(1, 2):
                row[states[rng.below(mfa_states)]] = 1
            delta[y][a] = row
    mfa = Mfa(states, ALPHABET, delta)
    return mc, mfa, ("x0", "y0")


def unambiguous_nfas(count=20, seed=31):
    """Seeded NFAs that are unambiguous from ``y0``, paired with random MCs.

    The first few are fixed shapes (a parity counter, two disjoint branches,
    a DFA in NFA form); the rest are random NFAs that pass the exact
    unambiguity check and accept at least one word. Each NFA gets a random
    MC whose depth-8 traces put positive mass on its language, so no pair
    is trivially 0. Returns ``(mc, nfa, init)``.
    """
    from .models import check_unambiguous
    from .semantics import infer_q_prob, mc_bounded_traces, nfa_bounded_language

    fixed = [
        Nfa(("y0", "y1"), ALPHABET, {"y0": {"a": {"y1", CHECK}, "b": {"y0"}}, "y1": {"a": {"y0"}, "b": {"y1"}}}),
        Nfa(("y0", "y1", "y2"), ALPHABET, {"y0": {"a": {"y1"}, "b": {"y2"}}, "y1": {"b": {"y1", CHECK}}, "y2": {"a": {CHECK}, "b": {"y0"}}}),
        Nfa(("y0", "y1"), ALPHABET, {"y0": {"a": {"y1", CHECK}, "b": {"y0"}}, "y1": {"a": {"y1"}, "b": {"y0", CHECK}}}),
    ]
    rng = Lcg(seed)
    nfas = list(fixed)
    while len(nfas) < count:
        nfa = random_nfa(rng, 2 + rng.below(3), density=(1, 3))
        if check_unambiguous(nfa, 8, ["y0"]) and _accepts_something(nfa):
            nfas.append(nfa)
    out = []
    for nfa in nfas:
        lang = nfa_bounded_language(nfa, "y0", 8)
        while True:
            mc = random_mc(rng, 2 + rng.below(3))
            if infer_q_prob(mc_bounded_traces(mc, "x0", 8), lang) > 0:
                break
        out.append((mc, nfa, ("x0", "y0")))
    return out


def _accepts_something(nfa):
    from .graph import reachable

    seen = reachable(["y0"], lambda y: (t for a in nfa.alphabet for t in nfa.delta[y][a] if t != CHECK))
    return any(CHECK in nfa.delta[y][a] for y in seen for a in nfa.alphabet)
