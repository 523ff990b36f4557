"""Commutative monoids and the functor F_A of finitely supported A-valued maps.

A map ``f in F_A(X)`` is a plain mapping ``X -> A`` (for ``X = {0..n-1}``
a tuple works too). Finite monoids carry an explicit operation table that is
checked exhaustively on construction; the three infinite monoids used by the
closed-form families are :data:`NAT`, :data:`QPLUS` and :data:`QTIMES`.
"""

from fractions import Fraction
from itertools import product


class MonoidError(ValueError):
    pass


class Monoid:
    """Commutative monoid given by a zero and an addition function."""

    elements = None

    def __init__(self, name, zero, add):
        self.name = name
        self.zero = zero
        self._add = add

    def add(self, x, y):
        return self._add(x, y)

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def times(self, n, x):
        """``n . x``: the sum of n copies of x, by doubling."""
        acc = self.zero
        base = x
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    @property
    def finite(self):
        return self.elements is not None

    def __repr__(self):
        return f"<Monoid {self.name}>"


NAT = Monoid("N", 0, lambda x, y: x + y)
NAT.times = lambda n, x: n * x
QPLUS = Monoid("Q>=0 (+)", Fraction(0), lambda x, y: x + y)
QPLUS.times = lambda n, x: n * x
QTIMES = Monoid("Q>=0 (*)", Fraction(1), lambda x, y: x * y)
QTIMES.times = lambda n, x: x**n


class FinMonoid(Monoid):
    """Finite commutative monoid; ``table[i][j]`` is the index of ``e_i + e_j``."""

    def __init__(self, elements, table, zero, name=None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise MonoidError("duplicate elements")
        self.index = {e: i for i, e in enumerate(self.elements)}
        if zero not in self.index:
            raise MonoidError(f"zero {zero!r} is not an element")
        n = len(self.elements)
        if len(table) != n or any(len(row) != n for row in table):
            raise MonoidError(f"operation table must be {n}x{n}")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise MonoidError(f"table entry {v!r} is not an element index")
        self.table = tuple(tuple(row) for row in table)
        super().__init__(name or f"FinMonoid{self.elements}", zero, self._op)
        self._verify()

    @classmethod
    def from_names(cls, elements, op, zero, name=None):
        """Build from a table whose entries are element names (the JSON layout)."""
        index = {e: i for i, e in enumerate(elements)}
        try:
            table = [[index[v] for v in row] for row in op]
        except KeyError as exc:
            raise MonoidError(f"closure: {exc.args[0]!r} is not an element") from None
        return cls(elements, table, zero, name)

    def _op(self, x, y):
        return self.elements[self.table[self.index[x]][self.index[y]]]

    def _verify(self):
        t = self.table
        n = len(self.elements)
        z = self.index[self.zero]
        e = self.elements
        for i in range(n):
            if t[z][i] != i or t[i][z] != i:
                raise MonoidError(f"unit: {e[z]!r} + {e[i]!r} != {e[i]!r}")
        for i, j in product(range(n), repeat=2):
            if t[i][j] != t[j][i]:
                raise MonoidError(f"commutativity fails for ({e[i]!r}, {e[j]!r})")
        for i, j, k in product(range(n), repeat=3):
            if t[t[i][j]][k] != t[i][t[j][k]]:
                raise MonoidError(f"associativity fails for ({e[i]!r}, {e[j]!r}, {e[k]!r})")


def bool_or():
    return FinMonoid((False, True), ((0, 1), (1, 1)), False, "(B, or)")


def cyclic(k):
    return FinMonoid(tuple(range(k)), [[(i + j) % k for j in range(k)] for i in range(k)], 0, f"Z{k}")


def max_monoid(k=2):
    """``{0..k-1}`` under max; every element idempotent."""
    return FinMonoid(tuple(range(k)), [[max(i, j) for j in range(k)] for i in range(k)], 0, f"max{k}")


def mult01():
    """``({0, 1}, *, 1)``: the finite slice of the multiplicative reals."""
    return FinMonoid((1, 0), ((0, 1), (1, 1)), 1, "({0,1}, *)")


def cyclic_with_unit(k):
    """``Z_k`` with a fresh unit 0 adjoined; 1 generates it with ``(k+1) . 1 = 1``.

    Element ``l`` (1 <= l <= k) stands for ``l . 1``, so ``k . 1`` is the
    group's own identity and differs from the monoid zero.
    """
    def op(i, j):
        if i == 0 or j == 0:
            return i + j
        return (i + j - 1) % k + 1

    return FinMonoid(tuple(range(k + 1)), [[op(i, j) for j in range(k + 1)] for i in range(k + 1)], 0, f"Z{k}+unit")


def saturating(k):
    """``{0..k}`` under addition capped at k (a truncation of N)."""
    return FinMonoid(
        tuple(range(k + 1)), [[min(i + j, k) for j in range(k + 1)] for i in range(k + 1)], 0, f"N<={k}"
    )


def fa_apply(monoid, g, f, codomain):
    """Push ``f`` forward along ``g``: sum the values over each fibre."""
    out = {y: monoid.zero for y in codomain}
    for x, v in f.items():
        y = g[x]
        out[y] = monoid.add(out[y], v)
    return out


def fa_apply_seq(monoid, g, f, n):
    """:func:`fa_apply` for ``X = {0..len(f)-1}``, ``Y = {0..n-1}``, g and f tuples."""
    out = [monoid.zero] * n
    for x, v in enumerate(f):
        y = g[x]
        out[y] = monoid.add(out[y], v)
    return tuple(out)


def idempotents(monoid, n):
    """Elements c of a finite monoid with ``n . c == c``."""
    return [c for c in monoid.elements if monoid.times(n, c) == c]


class SingleGeneration:
    """How a singly generated monoid sits: free (case 1) or cyclic (case 2).

    ``count(v)`` is the least l with ``l . gen == v``; ``cycle`` is the
    least n > 1 with ``n . gen == gen`` (None when there is none).
    """

    def __init__(self, monoid, generator, counts, cycle):
        self.monoid = monoid
        self.generator = generator
        self._counts = counts
        self.cycle = cycle

    def count(self, v):
        if self._counts is None:
            return v
        return self._counts[v]

    @property
    def case(self):
        m = self.monoid
        if self._counts is None:
            return 1
        if (
            self.cycle is not None
            and self.generator != m.zero
            and m.times(self.cycle - 1, self.generator) != m.zero
        ):
            return 2
        return None


def single_generation(monoid):
    """Find the first generator of ``monoid`` (in element order) or None.

    :data:`NAT` is treated as free on 1.
    """
    if monoid is NAT:
        return SingleGeneration(NAT, 1, None, None)
    if not monoid.finite:
        return None
    size = len(monoid.elements)
    for gen in monoid.elements:
        counts = {}
        v = monoid.zero
        for l in range(size + 1):
            counts.setdefault(v, l)
            v = monoid.add(v, gen)
        if len(counts) != size:
            continue
        cycle = next((n for n in range(2, size + 2) if monoid.times(n, gen) == gen), None)
        return SingleGeneration(monoid, gen, counts, cycle)
    return None
