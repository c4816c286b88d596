"""Finite algebras as operation tables, semirings with absorbing zero, partitions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import AxiomViolation, SizeError

MAX_ORDER = 16

ADD, MUL, ZERO = "+", "*", "o"


def _freeze(table):
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Operation:
    name: str
    arity: int
    table: np.ndarray

    def __call__(self, *args):
        return int(self.table[args]) if args else int(self.table)

    def key(self):
        return (self.name, self.arity, tuple(self.table.ravel().tolist()))


class FiniteAlgebra:
    """Carrier ``0..order-1`` with named operation tables.

    ``ops`` is a sequence of ``(name, arity, table)``; a table is anything
    numpy can turn into an integer array of shape ``(order,) * arity``.
    """

    def __init__(self, order, ops):
        if order < 1:
            raise ValueError("order must be positive")
        if order > MAX_ORDER:
            raise SizeError(f"order {order} exceeds the supported maximum {MAX_ORDER}")
        self.order = int(order)
        built = []
        names = set()
        for name, arity, table in ops:
            if name in names:
                raise ValueError(f"duplicate operation name {name!r}")
            names.add(name)
            arr = _freeze(table)
            if arr.shape != (self.order,) * arity:
                raise ValueError(
                    f"table of {name!r} has shape {arr.shape}, expected {(self.order,) * arity}"
                )
            if arr.size and (arr.min() < 0 or arr.max() >= self.order):
                raise ValueError(f"table of {name!r} has entries outside 0..{self.order - 1}")
            built.append(Operation(name, int(arity), arr))
        self.ops = tuple(built)
        self._by_name = {op.name: op for op in self.ops}
        self._key = (self.order, tuple(op.key() for op in self.ops))

    def op(self, name) -> Operation:
        return self._by_name[name]

    @property
    def signature(self):
        return tuple((op.name, op.arity) for op in self.ops)

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        sig = ", ".join(f"{n}/{a}" for n, a in self.signature)
        return f"FiniteAlgebra(order={self.order}, ops=[{sig}])"


class FiniteSemiring:
    """A validated semiring ``(S, +, *, o)`` with multiplicatively absorbing zero.

    Build one through :func:`validate_semiring` or :meth:`from_tables`; the
    constructor itself does not check the laws.
    """

    def __init__(self, alg: FiniteAlgebra, zero: int, name=None):
        self.alg = alg
        self.zero = int(zero)
        self.name = name
        self.add_table = alg.op(ADD).table
        self.mul_table = alg.op(MUL).table
        # plain nested tuples: scalar indexing into numpy arrays is slow in hot loops
        self.plus = tuple(tuple(int(v) for v in row) for row in self.add_table)
        self.times = tuple(tuple(int(v) for v in row) for row in self.mul_table)

    @classmethod
    def from_tables(cls, add, mul, zero=0, name=None):
        return validate_semiring(semiring_algebra(add, mul, zero), zero, name=name)

    @property
    def order(self):
        return self.alg.order

    def elements(self):
        return range(self.alg.order)

    def key(self):
        return (self.zero, self.plus, self.times)

    def __eq__(self, other):
        return isinstance(other, FiniteSemiring) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"FiniteSemiring{label}(order={self.order}, zero={self.zero})"

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = self.plus[acc][x]
        return acc

    def product(self, items):
        items = list(items)
        if not items:
            raise ValueError("empty product has no value: the semiring need not have an identity")
        acc = items[0]
        for x in items[1:]:
            acc = self.times[acc][x]
        return acc

    def multiplicative_identity(self):
        """Return the two-sided multiplicative identity, or None."""
        n = self.order
        for e in range(n):
            if all(self.times[e][x] == x and self.times[x][e] == x for x in range(n)):
                return e
        return None

    def has_zero_multiplication(self):
        return all(v == self.zero for row in self.times for v in row)


def semiring_algebra(add, mul, zero=0) -> FiniteAlgebra:
    add = np.asarray(add)
    return FiniteAlgebra(add.shape[0], [(ADD, 2, add), (MUL, 2, mul), (ZERO, 0, zero)])


def _semiring_laws(p, t, o, n):
    R = range(n)
    for x, y, z in itertools.product(R, R, R):
        if p[p[x][y]][z] != p[x][p[y][z]]:
            yield "add-associative", (x, y, z)
            break
    for x, y in itertools.product(R, R):
        if p[x][y] != p[y][x]:
            yield "add-commutative", (x, y)
            break
    for x in R:
        if p[x][o] != x:
            yield "add-identity", (x, o)
            break
    for x, y, z in itertools.product(R, R, R):
        if t[t[x][y]][z] != t[x][t[y][z]]:
            yield "mul-associative", (x, y, z)
            break
    for x in R:
        if t[x][o] != o:
            yield "absorbing-zero", (x, o)
            break
        if t[o][x] != o:
            yield "absorbing-zero", (o, x)
            break
    for x, y, z in itertools.product(R, R, R):
        if t[x][p[y][z]] != p[t[x][y]][t[x][z]]:
            yield "left-distributive", (x, y, z)
            break
    for x, y, z in itertools.product(R, R, R):
        if t[p[x][y]][z] != p[t[x][z]][t[y][z]]:
            yield "right-distributive", (x, y, z)
            break


AXIOMS = (
    "add-associative",
    "add-commutative",
    "add-identity",
    "mul-associative",
    "absorbing-zero",
    "left-distributive",
    "right-distributive",
)


def validate_semiring(alg: FiniteAlgebra, zero: int, name=None) -> FiniteSemiring:
    """Check the semiring-with-absorbing-zero laws and wrap ``alg``.

    Raises :class:`AxiomViolation` naming the first failing law (in the order
    of :data:`AXIOMS`) with its lexicographically first witness.
    """
    sig = dict(alg.signature)
    if sig.get(ADD) != 2 or sig.get(MUL) != 2:
        raise ValueError(f"expected binary {ADD!r} and {MUL!r} operations, got {alg.signature}")
    if not 0 <= zero < alg.order:
        raise ValueError(f"zero {zero} outside the carrier")
    if ZERO in sig and alg.op(ZERO)() != zero:
        raise ValueError(f"constant {ZERO!r} is {alg.op(ZERO)()}, zero argument is {zero}")
    plus = [[int(v) for v in row] for row in alg.op(ADD).table]
    times = [[int(v) for v in row] for row in alg.op(MUL).table]
    for axiom, witness in _semiring_laws(plus, times, zero, alg.order):
        raise AxiomViolation(axiom, witness)
    if ZERO not in sig:
        alg = FiniteAlgebra(alg.order, [(o.name, o.arity, o.table) for o in alg.ops] + [(ZERO, 0, zero)])
    return FiniteSemiring(alg, zero, name=name)


def is_additively_cancellative(s: FiniteSemiring) -> bool:
    # a + c = a + d  =>  c = d, i.e. every row of the addition table is injective
    return all(len(set(row)) == s.order for row in s.plus)


def additive_inverse(s: FiniteSemiring, x):
    for y in s.elements():
        if s.plus[x][y] == s.zero:
            return y
    return None


def additive_reduct(s: FiniteSemiring) -> FiniteAlgebra:
    """``(S, +, o)`` as a standalone algebra."""
    return FiniteAlgebra(s.order, [(ADD, 2, s.add_table), (ZERO, 0, s.zero)])


def multiplicative_reduct(s: FiniteSemiring) -> FiniteAlgebra:
    """``(S, *, o)`` as a standalone algebra."""
    return FiniteAlgebra(s.order, [(MUL, 2, s.mul_table), (ZERO, 0, s.zero)])


def as_algebra(s) -> FiniteAlgebra:
    return s.alg if isinstance(s, FiniteSemiring) else s


@dataclass(frozen=True)
class Partition:
    """Equivalence relation on ``0..order-1``.

    ``labels[x]`` is the least element of the class of ``x``; this canonical
    form makes equality and hashing O(1) in the number of classes.
    """

    labels: tuple
    order: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "order", len(self.labels))
        for x, r in enumerate(self.labels):
            if r > x or self.labels[r] != r:
                raise ValueError(f"labels {self.labels} are not in least-representative form")

    @classmethod
    def identity(cls, order):
        return cls(tuple(range(order)))

    @classmethod
    def full(cls, order):
        return cls((0,) * order)

    @classmethod
    def from_classes(cls, order, classes):
        labels = list(range(order))
        seen = set()
        for block in classes:
            block = sorted(block)
            for x in block:
                if x in seen or not 0 <= x < order:
                    raise ValueError(f"element {x} repeated or out of range")
                seen.add(x)
                labels[x] = block[0]
        return cls(tuple(labels))

    @classmethod
    def from_blocks(cls, block_ids):
        """Canonicalize any labelling where equal ids mean the same class."""
        first = {}
        return cls(tuple(first.setdefault(b, x) for x, b in enumerate(block_ids)))

    def classes(self):
        out = {}
        for x, r in enumerate(self.labels):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    def related(self, a, b):
        return self.labels[a] == self.labels[b]

    def pairs(self):
        return [(a, b) for a in range(self.order) for b in range(self.order) if self.labels[a] == self.labels[b]]

    def nontrivial_pairs(self):
        return [(a, b) for a, b in self.pairs() if a != b]

    @property
    def is_identity(self):
        return all(r == x for x, r in enumerate(self.labels))

    @property
    def is_full(self):
        return all(r == 0 for r in self.labels)

    def __le__(self, other):
        """Refinement order: every class of ``self`` lies inside a class of ``other``."""
        if self.order != other.order:
            raise ValueError("partitions over different carriers")
        return all(other.labels[x] == other.labels[r] for x, r in enumerate(self.labels))

    def __lt__(self, other):
        return self <= other and self != other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __str__(self):
        if self.is_identity:
            return "0"
        if self.is_full:
            return "1"
        return "|".join(",".join(map(str, c)) for c in self.classes())


def parse_partition(order, text) -> Partition:
    """``0``, ``1``, or classes separated by ``|`` with comma-separated members.

    Singleton classes may be left out: ``"0,4|2,6"`` on an order-8 carrier.
    """
    text = text.strip()
    if text == "0":
        return Partition.identity(order)
    if text == "1":
        return Partition.full(order)
    classes = []
    for chunk in text.split("|"):
        chunk = chunk.strip().strip("{}[]")
        if chunk:
            classes.append([int(x) for x in chunk.replace(" ", ",").split(",") if x])
    return Partition.from_classes(order, classes)


def is_congruence(alg, p: Partition) -> bool:
    """True iff ``p`` is compatible with every operation of ``alg``."""
    alg = as_algebra(alg)
    if p.order != alg.order:
        raise ValueError("partition and algebra have different orders")
    labels = np.asarray(p.labels)
    for op in alg.ops:
        if op.arity == 0:
            continue
        t = labels[op.table]
        # compatible iff the labelled table only depends on the labels of the arguments,
        # checked one argument position at a time
        for axis in range(op.arity):
            moved = np.moveaxis(t, axis, 0)
            if not np.array_equal(moved, moved[labels]):
                return False
    return True
