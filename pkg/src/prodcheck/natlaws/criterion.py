"""The one-step correctness equation, evaluated exactly on semantic values.

For a law ``lam`` and modalities ``tau_s``, ``tau_r``, ``tau_sr`` the
equation is::

    q(tau_s(nu, a), tau_r(delta)) == tau_sr(F(q)(lam(nu, a, delta)))

Semantic values are truncated: trace subdistributions and multisets are
frozensets of ``(word, value)`` items, languages are frozensets of words.
The laws themselves are the ones used to build products
(:func:`prodcheck.product.dfa_law`, :func:`prodcheck.product.mfa_law`).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from ..models import CHECK
from ..product import dfa_law, mfa_law
from ..rng import Lcg
from ..semantics import ext_mul, infer_q_expected, infer_q_prob
from .naturality import RATIONAL_POOL

ALPHABET = ("a", "b")
MAX_WORD = 4


def freeze(mapping):
    return frozenset(mapping.items())


def tau_mc(nu, letter):
    """MC modality: ``nu`` weighs frozen trace subdistributions and CHECK."""
    out = {}
    for key, p in nu.items():
        if not p:
            continue
        if key == CHECK:
            out[(letter,)] = out.get((letter,), 0) + p
            continue
        for w, v in key:
            word = (letter,) + w
            out[word] = out.get(word, 0) + p * v
    return out


def tau_mfa(delta):
    out = {}
    for letter, row in delta.items():
        for key, k in row.items():
            if not k:
                continue
            if key == CHECK:
                out[(letter,)] = out.get((letter,), 0) + k
                continue
            for w, n in key:
                word = (letter,) + w
                out[word] = out.get(word, 0) + k * n
    return out


def tau_dfa(delta):
    out = set()
    for letter, (lang, accept) in delta.items():
        if accept:
            out.add((letter,))
        out.update((letter,) + w for w in lang)
    return frozenset(out)


def tau_nfa(delta):
    """``delta[letter] = (set of languages, has_check)``."""
    out = set()
    for letter, (langs, accept) in delta.items():
        if accept:
            out.add((letter,))
        for lang in langs:
            out.update((letter,) + w for w in lang)
    return frozenset(out)


def q_expected(sigma, mu):
    return infer_q_expected(dict(sigma), dict(mu))


def q_prob(sigma, lang):
    return infer_q_prob(dict(sigma), lang)


def tau_product(rho):
    """``rho(CHECK) + sum_r r * rho(r)`` with ``inf * 0 = 0``."""
    total = rho.get(CHECK, Fraction(0))
    for r, w in rho.items():
        if r != CHECK:
            total += ext_mul(r, w)
    return total


def pushforward(q, weights):
    """Apply F(q): relabel each pair by its q-value and merge equal labels."""
    rho = {}
    for key, w in weights.items():
        label = CHECK if key == CHECK else q(*key)
        rho[label] = rho.get(label, 0) + w
    return rho


@dataclass(frozen=True)
class Counterexample:
    nu: dict
    letter: str
    delta: dict
    left: object
    right: object


@dataclass(frozen=True)
class CriterionResult:
    passed: int
    total: int
    counterexample: Counterexample = None

    @property
    def ok(self):
        return self.passed == self.total


def check_criterion(law, tau_s, tau_r, tau_sr, q, inputs):
    """Evaluate both sides on every ``(nu, letter, delta)`` input."""
    passed = 0
    total = 0
    first = None
    for nu, letter, delta in inputs:
        total += 1
        left = q(freeze(tau_s(nu, letter)), _freeze_r(tau_r(delta)))
        right = tau_sr(pushforward(q, law(nu, letter, delta)))
        if left == right:
            passed += 1
        elif first is None:
            first = Counterexample(nu, letter, delta, left, right)
    return CriterionResult(passed, total, first)


def _freeze_r(value):
    return freeze(value) if isinstance(value, dict) else value


def _random_words(rng, count):
    words = set()
    while len(words) < count:
        n = 1 + rng.below(MAX_WORD)
        words.add(tuple(rng.choice(ALPHABET) for _ in range(n)))
    return sorted(words)


def _subdist(rng, keys):
    """Masses from the pool, each bounded by what is left of 1."""
    left = Fraction(1)
    out = {}
    for k in keys:
        options = [v for v in RATIONAL_POOL if v <= left]
        v = rng.choice(options)
        if v:
            out[k] = v
            left -= v
    return out


def random_trace_subdist(rng):
    return freeze(_subdist(rng, _random_words(rng, 1 + rng.below(3))))


def random_multiset(rng):
    return freeze({w: 1 + rng.below(3) for w in _random_words(rng, 1 + rng.below(3))})


def random_language(rng):
    return frozenset(_random_words(rng, rng.below(4)))


def random_nu(rng):
    keys = [random_trace_subdist(rng) for _ in range(1 + rng.below(3))]
    if rng.chance(2, 3):
        keys.insert(rng.below(len(keys) + 1), CHECK)
    return _subdist(rng, keys)


def random_mfa_input(rng):
    delta = {}
    for letter in ALPHABET:
        row = {}
        for _ in range(rng.below(3)):
            mu = random_multiset(rng)
            row[mu] = row.get(mu, 0) + 1 + rng.below(2)
        k = rng.below(3)
        if k:
            row[CHECK] = k
        delta[letter] = row
    return random_nu(rng), rng.choice(ALPHABET), delta


def random_dfa_input(rng):
    delta = {letter: (random_language(rng), rng.chance(1, 2)) for letter in ALPHABET}
    return random_nu(rng), rng.choice(ALPHABET), delta


def mfa_criterion(samples=100, seed=0, perturb=None):
    rng = Lcg(seed)
    inputs = [random_mfa_input(rng) for _ in range(samples)]
    law = partial(mfa_law, perturb=perturb) if perturb else mfa_law
    return check_criterion(law, tau_mc, tau_mfa, tau_product, q_expected, inputs)


def dfa_criterion(samples=100, seed=0):
    rng = Lcg(seed)
    inputs = [random_dfa_input(rng) for _ in range(samples)]
    return check_criterion(dfa_law, tau_mc, tau_dfa, tau_product, q_prob, inputs)


# The MC x NFA case. Any law into weights on pairs plus CHECK splits into a
# CHECK part and a pair part. Naturality pins the CHECK part down to
# (1 - mass) * [CHECK in delta(a)], and the pair part to 0, because the only
# parameter c in (Q>=0, +) with 2c = c is 0.


def forced_check_weight(sigma, letter, delta):
    langs, accept = delta[letter]
    return (1 - sum(sigma.values(), Fraction(0))) * int(accept)


def forced_right_side(sigma, letter, delta):
    return forced_check_weight(sigma, letter, delta)


def nfa_left_side(sigma, letter, delta):
    nu = dict(sigma)
    rest = 1 - sum(sigma.values(), Fraction(0))
    if rest:
        nu[CHECK] = rest
    return q_prob(freeze(tau_mc(nu, letter)), tau_nfa(delta))


@dataclass(frozen=True)
class NoGoReport:
    r: Fraction
    letter: str
    word: tuple
    left: Fraction
    right: Fraction
    pair_parameters: tuple

    @property
    def contradiction(self):
        return self.left != self.right


def no_go_witness(r, letter="a", word=("a",)):
    """Evaluate the equation on the Dirac input that no admissible law can satisfy.

    ``sigma`` puts mass r on the trace distribution concentrated on ``word``;
    ``delta`` sends every letter to the single language ``{word}``. The left
    side is r; the forced right side is 0.
    """
    r = Fraction(r)
    if not 0 < r <= 1:
        raise ValueError("r must lie in (0, 1]")
    word = tuple(word)
    letters = sorted(set(word) | {letter})
    mu = freeze({word: Fraction(1)})
    sigma = {mu: r}
    delta = {a: (frozenset([frozenset([word])]), False) for a in letters}
    pair_params = tuple(c for c in RATIONAL_POOL if 2 * c == c)
    return NoGoReport(
        r,
        letter,
        word,
        nfa_left_side(sigma, letter, delta),
        forced_right_side(sigma, letter, delta),
        pair_params,
    )


def check_weight_family(r, letter="a", accept=True):
    """The family that fixes the CHECK part: mass r on the empty trace subdistribution.

    Returns ``(left, forced)``; they agree, so this family alone gives no
    contradiction.
    """
    r = Fraction(r)
    sigma = {freeze({}): r} if r else {}
    delta = {letter: (frozenset([frozenset()]), accept)}
    return nfa_left_side(sigma, letter, delta), forced_check_weight(sigma, letter, delta)
