"""Bounded naturality checks and exhaustive enumeration between finite monoids.

Naturality is certified only up to a maximum set size: every function
``g : {0..m-1} -> {0..n-1}`` with ``m, n <= max_set_size`` and every input
``f`` is tried. That the squares keep commuting at larger sizes is not
checked here.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .families import raw_family
from .monoids import NAT, QPLUS, MonoidError, fa_apply_seq

RATIONAL_POOL = (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class Square:
    """A failing naturality square: ``lam(F_A g f) != F_B g (lam f)``."""

    g: tuple
    f: tuple
    pushed_then_mapped: tuple
    mapped_then_pushed: tuple

    def __str__(self):
        return (
            f"g={self.g}, f={self.f}: lambda(F(g)(f)) = {self.pushed_then_mapped}"
            f" but F(g)(lambda(f)) = {self.mapped_then_pushed}"
        )


def input_values(monoid, max_total=2):
    if monoid.finite:
        return monoid.elements
    if monoid is NAT:
        return tuple(range(max_total + 1))
    if monoid is QPLUS:
        return RATIONAL_POOL
    raise MonoidError(f"no finite input pool for {monoid.name}")


def check_naturality(family, max_set_size=4, values=None):
    """Return the first failing :class:`Square`, or None if all commute."""
    src, tgt = family.source, family.target
    values = tuple(values if values is not None else input_values(src))
    cache = {}

    def lam(f):
        out = cache.get(f)
        if out is None:
            out = cache[f] = family.component(f)
        return out

    for m in range(max_set_size + 1):
        inputs = list(product(values, repeat=m))
        for n in range(0 if m == 0 else 1, max_set_size + 1):
            for g in product(range(n), repeat=m):
                for f in inputs:
                    left = lam(fa_apply_seq(src, g, f, n))
                    right = fa_apply_seq(tgt, g, lam(f), n)
                    if left != right:
                        return Square(g, f, left, right)
    return None


def enumerate_nat_trans(source, target, max_set_size=4):
    """All size-2 components between finite monoids that extend naturally.

    Candidates are the tables ``(a1, a2) -> (t(a1, a2), t(a2, a1))`` for
    every function ``t : A x A -> B``; a table that is not of this form
    already fails the square for the swap map, so nothing is lost. Each
    candidate is extended to all sizes by the split-off map and kept iff no
    square fails up to ``max_set_size``.
    """
    if not (source.finite and target.finite):
        raise MonoidError("enumeration needs finite monoids")
    if max_set_size < 3:
        raise MonoidError("max_set_size must be at least 3")
    pairs = list(product(source.elements, repeat=2))
    found = []
    for values in product(target.elements, repeat=len(pairs)):
        t = dict(zip(pairs, values))
        table = {(a1, a2): (t[a1, a2], t[a2, a1]) for a1, a2 in pairs}
        fam = raw_family(source, target, {2: table})
        if check_naturality(fam, max_set_size) is None:
            found.append(fam)
    return found


def _inputs(family, max_set_size, values):
    values = tuple(values if values is not None else input_values(family.source))
    for m in range(1, max_set_size + 1):
        yield from product(values, repeat=m)


def equal_inputs_violation(family, max_set_size=4, values=None):
    """First ``(f, x, x')`` with ``f(x) == f(x')`` but different outputs, else None."""
    for f in _inputs(family, max_set_size, values):
        out = family.component(f)
        for i in range(len(f)):
            for j in range(i + 1, len(f)):
                if f[i] == f[j] and out[i] != out[j]:
                    return f, i, j
    return None


def idempotence_violation(family, n=0, max_set_size=4, values=None):
    """First ``(f, x)`` with ``n . f(x) == f(x)`` but ``n . out(x) != out(x)``, else None."""
    src, tgt = family.source, family.target
    for f in _inputs(family, max_set_size, values):
        out = family.component(f)
        for i, v in enumerate(f):
            if src.times(n, v) == v and tgt.times(n, out[i]) != out[i]:
                return f, i
    return None
