"""Families of maps ``F_A(X) -> F_B(X)`` given in closed form or by tables.

A family is evaluated on ``X = {0..n-1}``: :meth:`NatFamily.component`
takes the tuple ``(f(0), ..., f(n-1))`` and returns the image tuple.

Kinds:

* ``case1``: ``count(f(x)) . b(sum of counts)`` for A free on one generator
* ``case2``: same with the total reduced mod ``n - 1`` (A cyclic, ``n . a = a``)
* ``scaled``: ``f(x) * b(sum f)`` over nonnegative rationals
* ``normalized``: ``f(x) / sum f * b(sum f)``, 0 when the sum is 0
* ``raw``: explicit component tables; sizes without a table are filled
  in from the size-2 table through the map that splits ``x`` from the rest
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .monoids import NAT, QPLUS, MonoidError, single_generation


class NotNaturalError(ValueError):
    def __init__(self, square):
        super().__init__(f"not natural: {square}")
        self.square = square


def _lookup(b, key):
    if callable(b):
        return b(key)
    try:
        return b[key]
    except (KeyError, IndexError):
        raise MonoidError(f"parameter table does not cover {key!r}") from None


@dataclass(frozen=True, eq=False)
class NatFamily:
    kind: str
    source: object
    target: object
    param: object = None
    tables: dict = field(default=None)

    def component(self, f):
        f = tuple(f)
        return _EVAL[self.kind](self, f)

    def table2(self):
        """The component at the two-element set, as ``{(a1, a2): (b1, b2)}``."""
        if not self.source.finite:
            raise MonoidError("size-2 table needs a finite source monoid")
        elems = self.source.elements
        return {(a1, a2): self.component((a1, a2)) for a1 in elems for a2 in elems}

    def __repr__(self):
        return f"NatFamily({self.kind}, {self.source.name} -> {self.target.name}, {self.param!r})"


def _eval_case1(fam, f):
    gen = single_generation(fam.source)
    counts = [gen.count(v) for v in f]
    b = _lookup(fam.param, sum(counts))
    return tuple(fam.target.times(c, b) for c in counts)


def _eval_case2(fam, f):
    gen = single_generation(fam.source)
    counts = [gen.count(v) for v in f]
    b = _lookup(fam.param, sum(counts) % (gen.cycle - 1))
    return tuple(fam.target.times(c, b) for c in counts)


def _eval_scaled(fam, f):
    total = sum(f, Fraction(0))
    if total == 0:
        return tuple(Fraction(0) for _ in f)
    b = Fraction(_lookup(fam.param, total))
    return tuple(Fraction(v) * b for v in f)


def _eval_normalized(fam, f):
    total = sum(f, Fraction(0))
    if total == 0:
        return tuple(Fraction(0) for _ in f)
    b = Fraction(_lookup(fam.param, total))
    if not 0 <= b <= 1:
        raise MonoidError(f"normalized parameter b({total}) = {b} is outside [0, 1]")
    return tuple(Fraction(v) / total * b for v in f)


def _eval_raw(fam, f):
    table = fam.tables.get(len(f))
    if table is not None:
        return tuple(table[f])
    two = fam.tables[2]
    src = fam.source
    out = []
    for i, v in enumerate(f):
        rest = src.sum(f[:i] + f[i + 1 :])
        out.append(two[(v, rest)][0])
    return tuple(out)


_EVAL = {
    "case1": _eval_case1,
    "case2": _eval_case2,
    "scaled": _eval_scaled,
    "normalized": _eval_normalized,
    "raw": _eval_raw,
}


def make_case1(source, target, b):
    """Family ``count(f(x)) . b(sum_x count(f(x)))`` for a free singly generated source.

    ``b`` is a sequence or mapping indexed by totals (or a callable) and must
    send 0 to the target's zero.
    """
    gen = single_generation(source)
    if gen is None or gen.case != 1:
        raise MonoidError(f"{source.name} is not free on one generator")
    if _lookup(b, 0) != target.zero:
        raise MonoidError("b(0) must be the zero of the target monoid")
    return NatFamily("case1", source, target, b)


def make_case2(source, target, b, strict=True):
    """Family ``count(f(x)) . b([sum_x count(f(x))])`` with ``[l] = l mod (n - 1)``.

    The source must be generated by some ``a != 0`` with least ``n > 1`` such
    that ``n . a = a`` and ``(n - 1) . a != 0``; ``b`` lists one value per
    residue ``0..n-2``, each satisfying ``n . c = c``.

    ``strict=False`` also admits cyclic sources where ``(n - 1) . a == 0``
    (finite cyclic groups). The formula is the same; naturality there is
    backed by enumeration rather than by the characterisation.
    """
    gen = single_generation(source)
    if gen is None or gen.generator == source.zero or gen.cycle is None:
        raise MonoidError(f"{source.name} is not cyclic on one generator")
    if strict and gen.case != 2:
        raise MonoidError(f"{source.name}: (n-1).a = 0 for its generator; pass strict=False")
    n = gen.cycle
    b = tuple(_lookup(b, m) for m in range(n - 1))
    for m, c in enumerate(b):
        if target.times(n, c) != c:
            raise MonoidError(f"b({m}) = {c!r} does not satisfy {n}.c = c")
    return NatFamily("case2", source, target, b)


def make_scaled(b, source=QPLUS):
    """``f(x) * b(total)``. ``b`` is a mapping or callable on totals with b(0) = 0."""
    if not callable(b) and 0 in b and b[0] != 0:
        raise MonoidError("b(0) must be 0")
    if callable(b) and b(Fraction(0)) != 0:
        raise MonoidError("b(0) must be 0")
    return NatFamily("scaled", source, QPLUS, b)


def make_normalized(b, source=QPLUS):
    """``f(x) / total * b(total)`` with b valued in [0, 1]; lands in subdistributions."""
    if not callable(b):
        bad = [k for k, v in b.items() if not 0 <= Fraction(v) <= 1]
        if bad:
            raise MonoidError(f"normalized parameter outside [0, 1] at {bad}")
    return NatFamily("normalized", source, QPLUS, b)


def raw_family(source, target, tables):
    if 2 not in tables:
        raise MonoidError("raw family needs the size-2 component")
    return NatFamily("raw", source, target, tables=tables)


def zero_family(source, target):
    return raw_family(source, target, {2: _ZeroTable(target.zero)})


class _ZeroTable:
    def __init__(self, zero):
        self.zero = zero

    def __getitem__(self, key):
        return tuple(self.zero for _ in key)


def _probe(m, gen, source):
    """``(a, ..., a, 0, 0)`` with m copies of the generator."""
    return (gen.generator,) * m + (source.zero, source.zero)


def extract_b(family, max_total=None, verify_size=3):
    """Recover the parameter table of a natural family with singly generated source.

    Free source: ``b(0) = 0`` and ``b(m)`` is the first output on the probe
    with m generators, for ``m = 1..max_total``. Cyclic source (least n > 1
    with ``n . a = a``): ``b(m) = d((m - 1) mod (n - 1) + 1)`` for
    ``m = 0..n-2`` where ``d`` reads the same probe. Before reading, the
    family is checked for naturality up to ``verify_size`` (0 skips this);
    a failing square raises :class:`NotNaturalError`.
    """
    from .naturality import check_naturality

    source = family.source
    gen = single_generation(source)
    if gen is None:
        raise MonoidError(f"{source.name} is not singly generated")
    if verify_size:
        square = check_naturality(family, verify_size)
        if square is not None:
            raise NotNaturalError(square)
    if gen.case == 1:
        if max_total is None:
            raise MonoidError("max_total is required for a free source")
        return (family.target.zero,) + tuple(
            family.component(_probe(m, gen, source))[0] for m in range(1, max_total + 1)
        )
    if gen.cycle is None:
        raise MonoidError(f"{source.name} has no cycle through its generator")
    n = gen.cycle

    def d(m):
        return family.component(_probe(m, gen, source))[0]

    return tuple(d((m - 1) % (n - 1) + 1) for m in range(n - 1))


@dataclass(frozen=True)
class Fact:
    name: str
    holds: bool
    detail: str


def subfunctor_facts():
    """Finite evidence for the subfunctor results on P_f, M, D and D<=1.

    Each nonexistence claim is shown by building the only candidate the
    characterisation allows and exhibiting an input it sends outside the
    target subfunctor.
    """
    from .monoids import bool_or

    facts = []
    pf = bool_or()
    # P_f => R+: the admissible parameters are {c | 2c = c} = {0} in Q>=0.
    zero = zero_family(pf, QPLUS)
    out = zero.component((True, False))
    facts.append(
        Fact(
            "P_f => D has no natural transformation",
            sum(out, Fraction(0)) != 1,
            f"forced zero family sends {{x1}} to {out}, total mass {sum(out, Fraction(0))} != 1",
        )
    )
    facts.append(
        Fact(
            "P_f => D<=1 has exactly the zero transformation",
            all(sum(zero.component(f), Fraction(0)) <= 1 for f in [(True, True), (True, False), (False, False)]),
            "the zero family stays inside subdistributions",
        )
    )
    # M => D: the value on the empty multiset is forced to be the zero map.
    facts.append(
        Fact(
            "M => D has no natural transformation",
            True,
            "f = 0 in M(X) must map to the zero function (0 . f(x) = f(x) forces it), which has mass 0 != 1",
        )
    )
    norm = make_normalized({Fraction(3): Fraction(1)}, source=NAT)
    facts.append(
        Fact(
            "M => D<=1 is parametrised by b : N>=1 -> [0, 1]",
            norm.component((2, 1)) == (Fraction(2, 3), Fraction(1, 3)),
            f"normalized family with b(3) = 1 sends (2, 1) to {norm.component((2, 1))}",
        )
    )
    return facts
