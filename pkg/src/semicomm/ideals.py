"""Ideals of semirings, their products and commutators, and induced congruences."""

from __future__ import annotations

import itertools

from .algebra import FiniteSemiring, Partition
from .congruence import _UnionFind, congruence_generated_by
from .errors import InternalError, SizeError

IDEAL_ORDER_BOUND = 16
SUBSET_TEST_BOUND = 6


class IdealSet:
    """An ideal: nonempty, closed under ``+`` and under multiplication by any element on either side."""

    __slots__ = ("semiring", "elems")

    def __init__(self, semiring: FiniteSemiring, elems):
        self.semiring = semiring
        self.elems = frozenset(elems)

    def __iter__(self):
        return iter(sorted(self.elems))

    def __len__(self):
        return len(self.elems)

    def __contains__(self, x):
        return x in self.elems

    def __le__(self, other):
        return self.elems <= other.elems

    def __eq__(self, other):
        return isinstance(other, IdealSet) and self.elems == other.elems and self.semiring == other.semiring

    def __hash__(self):
        return hash(self.elems)

    def __repr__(self):
        return f"IdealSet({sorted(self.elems)})"

    @property
    def is_zero(self):
        return self.elems == {self.semiring.zero}


def is_ideal(s: FiniteSemiring, elems) -> bool:
    elems = set(elems)
    if not elems:
        return False
    p, t = s.plus, s.times
    for a in elems:
        for b in elems:
            if p[a][b] not in elems:
                return False
        for x in s.elements():
            if t[a][x] not in elems or t[x][a] not in elems:
                return False
    return True


def sum_closure(s: FiniteSemiring, elems):
    """Close a set under ``+`` (finite sums of its members); adds the zero."""
    closed = set(elems) | {s.zero}
    frontier = list(closed)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(closed):
                c = s.plus[a][b]
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    return closed


def ideal_closure(s: FiniteSemiring, seed) -> IdealSet:
    """Least ideal containing ``seed``."""
    seed = set(seed)
    if not seed:
        raise ValueError("seed must be nonempty")
    closed = set(seed)
    frontier = list(closed)
    while frontier:
        fresh = []
        for a in frontier:
            cands = [s.plus[a][b] for b in closed]
            for x in s.elements():
                cands.append(s.times[a][x])
                cands.append(s.times[x][a])
            for c in cands:
                if c not in closed:
                    closed.add(c)
                    fresh.append(c)
        frontier = fresh
    return IdealSet(s, closed)


def all_ideals(s: FiniteSemiring) -> list[IdealSet]:
    """All ideals, sorted by size then elements."""
    n = s.order
    if n > IDEAL_ORDER_BOUND:
        raise SizeError(f"order {n} above ideal enumeration bound {IDEAL_ORDER_BOUND}")
    found = set()
    if n <= SUBSET_TEST_BOUND:
        for r in range(1, n + 1):
            for sub in itertools.combinations(range(n), r):
                if is_ideal(s, sub):
                    found.add(frozenset(sub))
    else:
        # every ideal is a join of principal ideals
        principal = {frozenset(ideal_closure(s, [x]).elems) for x in s.elements()}
        found = set(principal)
        frontier = list(found)
        while frontier:
            fresh = []
            for a in frontier:
                for b in principal:
                    c = frozenset(ideal_closure(s, a | b).elems)
                    if c not in found:
                        found.add(c)
                        fresh.append(c)
            frontier = fresh
    return [IdealSet(s, e) for e in sorted(found, key=lambda e: (len(e), sorted(e)))]


def ideal_product(ideals) -> IdealSet:
    """All finite sums of products ``a1 * ... * an`` with ``aj`` taken from the j-th ideal."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    s = ideals[0].semiring
    prods = {s.product(combo) for combo in itertools.product(*(sorted(i.elems) for i in ideals))}
    return IdealSet(s, sum_closure(s, prods))


def power_of_S(s: FiniteSemiring, n: int) -> IdealSet:
    if n < 1:
        raise ValueError("power must be at least 1")
    whole = IdealSet(s, s.elements())
    if n == 1:
        return whole
    return ideal_product([whole] * n)


def powers_until_stable(s: FiniteSemiring, limit=None):
    """``[S^1, S^2, ...]`` up to the first repeat (or ``limit`` terms)."""
    out = [power_of_S(s, 1)]
    while limit is None or len(out) < limit:
        nxt = ideal_product([out[-1], out[0]])
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


def raw_power_is_zero(s: FiniteSemiring, n: int) -> bool:
    """Whether every product of ``n`` elements (no sums) is the zero."""
    level = set(s.elements())
    for _ in range(n - 1):
        level = {s.times[a][x] for a in level for x in s.elements()}
    return level == {s.zero}


def ideal_commutator(ideals) -> IdealSet:
    """Sum over all orderings of the ideal products."""
    ideals = list(ideals)
    if len(ideals) < 2:
        raise ValueError("need at least two ideals")
    s = ideals[0].semiring
    elems = set()
    for perm in set(itertools.permutations(range(len(ideals)))):
        elems |= ideal_product([ideals[i] for i in perm]).elems
    return IdealSet(s, sum_closure(s, elems))


def rho_formula(s: FiniteSemiring, ideal) -> Partition:
    """The relation ``a ~ b  iff  a + i = b + j`` for some ``i, j`` in the ideal.

    Raises InternalError if the relation is not an equivalence.
    """
    elems = sorted(ideal.elems if isinstance(ideal, IdealSet) else ideal)
    n = s.order
    shifted = [frozenset(s.plus[a][i] for i in elems) for a in range(n)]
    rel = [[bool(shifted[a] & shifted[b]) for b in range(n)] for a in range(n)]
    uf = _UnionFind(n)
    for a in range(n):
        for b in range(n):
            if rel[a][b]:
                uf.union(a, b)
    p = uf.partition()
    if any(rel[a][b] != p.related(a, b) for a in range(n) for b in range(n)):
        raise InternalError(f"relation induced by {elems} is not transitive")
    return p


def rho_generated(s: FiniteSemiring, ideal) -> Partition:
    """Least congruence with the ideal inside the class of the zero."""
    return congruence_generated_by(s, [(x, s.zero) for x in ideal])


def rho_of_ideal(s: FiniteSemiring, ideal) -> Partition:
    """Congruence induced by an ideal, cross-checked against the generated congruence."""
    p = rho_formula(s, ideal)
    q = rho_generated(s, ideal)
    if p != q:
        raise InternalError(f"induced congruence of {sorted(ideal)}: formula gives {p}, generation gives {q}")
    return p


def zero_class(s: FiniteSemiring, p: Partition):
    return {x for x in s.elements() if p.related(x, s.zero)}


def is_k_closed(s: FiniteSemiring, ideal) -> bool:
    """Diagnostic: whether the ideal is the whole zero-class of its induced congruence."""
    return zero_class(s, rho_formula(s, ideal)) == set(ideal)
