"""Slow, obviously-correct reference implementations used only by the tests."""

import itertools

from semicomm.algebra import Partition, as_algebra
from semicomm.congruence import all_partitions


def _ops(alg):
    return [(op.arity, op) for op in as_algebra(alg).ops]


def naive_is_congruence(alg, p):
    n = alg.order
    for arity, op in _ops(alg):
        if arity == 0:
            continue
        for xs in itertools.product(range(n), repeat=arity):
            for ys in itertools.product(range(n), repeat=arity):
                if all(p.related(x, y) for x, y in zip(xs, ys)) and not p.related(op(*xs), op(*ys)):
                    return False
    return True


def naive_congruences(alg):
    return [p for p in all_partitions(alg.order) if naive_is_congruence(alg, p)]


def naive_generated(alg, pairs):
    """Meet of every congruence containing ``pairs``."""
    cands = [p for p in naive_congruences(alg) if all(p.related(a, b) for a, b in pairs)]
    labels = [None] * alg.order
    n = alg.order
    blocks = {}
    for x in range(n):
        key = tuple(p.labels[x] for p in cands)
        labels[x] = blocks.setdefault(key, x)
    return Partition.from_blocks(labels)


def naive_cube(alg, args):
    """Subpower of ``S^(2^k)`` generated by diagonals and per-dimension indicator tuples."""
    alg = as_algebra(alg)
    k = len(args)
    size = 1 << k
    gens = {tuple([x] * size) for x in range(alg.order)}
    for i, alpha in enumerate(args):
        for a, b in alpha.pairs():
            gens.add(tuple(b if (v >> i) & 1 else a for v in range(size)))
    ops = _ops(alg)
    known = set(gens)
    while True:
        fresh = set()
        items = list(known)
        for arity, op in ops:
            if arity == 0:
                c = op()
                fresh.add(tuple([c] * size))
                continue
            for combo in itertools.product(items, repeat=arity):
                fresh.add(tuple(op(*(t[v] for t in combo)) for v in range(size)))
        if fresh <= known:
            return known
        known |= fresh


def naive_condition_holds(cube, k, delta):
    half = 1 << (k - 1)
    for t in cube:
        if all(delta.related(t[w], t[w + half]) for w in range(half - 1)):
            if not delta.related(t[half - 1], t[2 * half - 1]):
                return False
    return True


def naive_commutator(alg, args):
    cube = naive_cube(alg, args)
    good = [d for d in naive_congruences(alg) if naive_condition_holds(cube, len(args), d)]
    least = [d for d in good if all(d <= e for e in good)]
    assert len(least) == 1
    return least[0]


def naive_ideals(s):
    n = s.order
    out = []
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            I = set(sub)
            if all(s.plus[a][b] in I for a in I for b in I) and all(
                s.times[a][x] in I and s.times[x][a] in I for a in I for x in range(n)
            ):
                out.append(frozenset(I))
    return out


def naive_rho(s, ideal):
    return naive_generated(s.alg, [(x, s.zero) for x in ideal])


def naive_semiring_tables(n):
    """Every (add, mul) pair with zero 0 satisfying the laws, by filtering raw tables.

    The zero row and column are fixed up front (identity for +, absorbing for *);
    everything else is brute force.
    """
    free = [(i, j) for i in range(1, n) for j in range(1, n)]
    out = []
    for av in itertools.product(range(n), repeat=len(free)):
        add = [[j if i == 0 else i if j == 0 else 0 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(free, av):
            add[i][j] = v
        if not _commutative(add, n) or not _associative(add, n):
            continue
        for mv in itertools.product(range(n), repeat=len(free)):
            mul = [[0] * n for _ in range(n)]
            for (i, j), v in zip(free, mv):
                mul[i][j] = v
            if _associative(mul, n) and _distributive(add, mul, n):
                out.append((add, mul))
    return out


def _commutative(t, n):
    return all(t[x][y] == t[y][x] for x in range(n) for y in range(n))


def _associative(t, n):
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(n) for y in range(n) for z in range(n))


def _distributive(add, mul, n):
    return all(
        mul[x][add[y][z]] == add[mul[x][y]][mul[x][z]] and mul[add[y][z]][x] == add[mul[y][x]][mul[z][x]]
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )
