"""Congruence generation and congruence lattices of small algebras."""

from __future__ import annotations

import itertools
from collections import deque

from .algebra import Partition, as_algebra, is_congruence
from .errors import SizeError

GENERATION_ORDER_BOUND = 16
LATTICE_ORDER_BOUND = 8


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def partition(self):
        return Partition.from_blocks([self.find(x) for x in range(len(self.parent))])


def _translations(alg):
    """All unary polynomial maps ``x -> f(c1, .., x, .., cm)`` of the basic operations."""
    n = alg.order
    maps = set()
    for op in alg.ops:
        if op.arity == 0:
            continue
        t = op.table.tolist() if op.arity > 1 else None
        for pos in range(op.arity):
            for rest in itertools.product(range(n), repeat=op.arity - 1):
                if op.arity == 1:
                    image = tuple(int(v) for v in op.table)
                else:
                    image = []
                    for x in range(n):
                        args = rest[:pos] + (x,) + rest[pos:]
                        v = t
                        for a in args:
                            v = v[a]
                        image.append(v)
                    image = tuple(image)
                if image != tuple(range(n)):
                    maps.add(image)
    return sorted(maps)


_translation_cache = {}


def translations(alg):
    alg = as_algebra(alg)
    key = alg
    if key not in _translation_cache:
        if len(_translation_cache) > 4096:
            _translation_cache.clear()
        _translation_cache[key] = _translations(alg)
    return _translation_cache[key]


def congruence_generated_by(alg, pairs, shuffle=None) -> Partition:
    """Least congruence containing ``pairs``.

    Union-find closure under the unary translations of the basic operations
    (Mal'cev's description of principal congruences). ``shuffle`` is an
    optional ``random.Random`` used to permute the worklist; the result does
    not depend on it.
    """
    alg = as_algebra(alg)
    if alg.order > GENERATION_ORDER_BOUND:
        raise SizeError(f"order {alg.order} above generation bound {GENERATION_ORDER_BOUND}")
    maps = translations(alg)
    uf = _UnionFind(alg.order)
    work = [(a, b) for a, b in pairs if a != b]
    if shuffle is not None:
        shuffle.shuffle(work)
    queue = deque(work)
    while queue:
        a, b = queue.popleft()
        if not uf.union(a, b):
            continue
        images = [(f[a], f[b]) for f in maps]
        if shuffle is not None:
            shuffle.shuffle(images)
        queue.extend((x, y) for x, y in images if x != y)
    return uf.partition()


def join(p: Partition, q: Partition) -> Partition:
    """Transitive closure of the union of two equivalences."""
    if p.order != q.order:
        raise ValueError("partitions over different carriers")
    uf = _UnionFind(p.order)
    for x in range(p.order):
        uf.union(x, p.labels[x])
        uf.union(x, q.labels[x])
    return uf.partition()


def meet(p: Partition, q: Partition) -> Partition:
    if p.order != q.order:
        raise ValueError("partitions over different carriers")
    return Partition.from_blocks(list(zip(p.labels, q.labels)))


def extend(alg, p: Partition, pairs) -> Partition:
    """Least congruence containing the congruence ``p`` and ``pairs``."""
    return congruence_generated_by(alg, list(pairs) + [(x, r) for x, r in enumerate(p.labels) if x != r])


class CongruenceSet:
    """The congruence lattice of one algebra, sorted by (number of classes desc, labels)."""

    def __init__(self, alg, congruences):
        self.alg = alg
        self.congruences = tuple(congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __len__(self):
        return len(self.congruences)

    def __contains__(self, p):
        return p in self.congruences

    @property
    def bottom(self):
        return Partition.identity(self.alg.order)

    @property
    def top(self):
        return Partition.full(self.alg.order)

    def above(self, pairs):
        return [c for c in self.congruences if all(c.related(a, b) for a, b in pairs)]


def all_congruences(alg, bound=LATTICE_ORDER_BOUND) -> CongruenceSet:
    """Every congruence, as the join-closure of the principal congruences."""
    alg = as_algebra(alg)
    if alg.order > bound:
        raise SizeError(f"order {alg.order} above lattice enumeration bound {bound}")
    n = alg.order
    principal = {congruence_generated_by(alg, [(a, b)]) for a in range(n) for b in range(a + 1, n)}
    found = {Partition.identity(n)} | principal
    frontier = list(found)
    while frontier:
        fresh = []
        for p in frontier:
            for q in principal:
                r = join(p, q)
                if r not in found:
                    found.add(r)
                    fresh.append(r)
        frontier = fresh
    ordered = sorted(found, key=lambda p: (-len(p.classes()), p.labels))
    return CongruenceSet(alg, ordered)


def brute_force_congruences(alg):
    """Every partition of the carrier that is a congruence (Bell-number enumeration)."""
    alg = as_algebra(alg)
    return [p for p in all_partitions(alg.order) if is_congruence(alg, p)]


def all_partitions(n):
    def rec(x, labels):
        if x == n:
            yield Partition(tuple(labels))
            return
        for r in sorted(set(labels)):
            yield from rec(x + 1, labels + [r])
        yield from rec(x + 1, labels + [x])

    if n == 0:
        return
    yield from rec(1, [0])
