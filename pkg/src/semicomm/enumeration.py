"""Exhaustive generation of small semirings with absorbing zero.

The zero is always element 0. Addition tables are built first by
backtracking over the upper triangle; for a fixed addition, left
distributivity forces every row ``y -> x*y`` of the multiplication to be an
endomorphism of ``(S, +, 0)``, so multiplications are assembled row by row
from that (short) list, with right distributivity and associativity checked
as soon as the rows they mention are chosen.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import FiniteSemiring, is_additively_cancellative
from .errors import SizeError

ENUMERATION_BOUND = 4


@dataclass(frozen=True)
class EnumerationTask:
    order: int
    up_to_iso: bool = True
    cancellative_only: bool = False
    with_identity_only: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")


def _assoc_ok(t, n):
    """Associativity over triples whose entries are all filled (None = unknown)."""
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            if xy is None:
                continue
            for z in range(n):
                yz = t[y][z]
                if yz is None:
                    continue
                lhs = t[xy][z]
                rhs = t[x][yz]
                if lhs is not None and rhs is not None and lhs != rhs:
                    return False
    return True


def commutative_monoids(n):
    """Addition tables on ``0..n-1`` with identity 0, commutative and associative."""
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        table[0][x] = table[x][0] = x
    out = []

    def rec(k):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in table))
            return
        i, j = cells[k]
        for v in range(n):
            table[i][j] = table[j][i] = v
            if _assoc_ok(table, n):
                rec(k + 1)
        table[i][j] = table[j][i] = None

    rec(0)
    return out


def endomorphisms(add):
    """Maps ``f`` with ``f(0) = 0`` and ``f(x + y) = f(x) + f(y)``."""
    n = len(add)
    out = []
    for tail in itertools.product(range(n), repeat=n - 1):
        f = (0,) + tail
        if all(f[add[x][y]] == add[f[x]][f[y]] for x in range(n) for y in range(x, n)):
            out.append(f)
    return out


def multiplications(add):
    """All multiplications making ``(add, mul)`` a semiring with absorbing zero 0."""
    n = len(add)
    ends = endomorphisms(add)
    zero_row = (0,) * n
    rows = [zero_row] + [None] * (n - 1)

    def consistent(upto):
        known = range(upto + 1)
        for x in known:
            for y in known:
                s = add[x][y]
                if s <= upto:
                    # (x + y) z = x z + y z
                    if any(rows[s][z] != add[rows[x][z]][rows[y][z]] for z in range(n)):
                        return False
                xy = rows[x][y]
                if xy <= upto:
                    # (x y) z = x (y z)
                    if any(rows[xy][z] != rows[x][rows[y][z]] for z in range(n)):
                        return False
        return True

    def rec(x):
        if x == n:
            yield tuple(rows)
            return
        for f in ends:
            rows[x] = f
            if consistent(x):
                yield from rec(x + 1)
        rows[x] = None

    yield from rec(1)


def _permute(table, perm):
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[perm[x]][perm[y]] = perm[table[x][y]]
    return tuple(tuple(r) for r in out)


def encode(add, mul):
    return tuple(v for row in add for v in row) + tuple(v for row in mul for v in row)


def zero_fixing_permutations(n):
    for tail in itertools.permutations(range(1, n)):
        yield (0,) + tail


def canonical_form(add, mul):
    """Least encoding over all carrier permutations fixing 0."""
    return min(encode(_permute(add, p), _permute(mul, p)) for p in zero_fixing_permutations(len(add)))


def is_canonical(add, mul):
    own = encode(add, mul)
    return all(encode(_permute(add, p), _permute(mul, p)) >= own for p in zero_fixing_permutations(len(add)))


def find_isomorphism(s: FiniteSemiring, t: FiniteSemiring):
    """A bijection fixing the zeros and transporting both tables, or None."""
    if s.order != t.order:
        return None
    n = s.order
    rest_s = [x for x in range(n) if x != s.zero]
    rest_t = [x for x in range(n) if x != t.zero]
    for image in itertools.permutations(rest_t):
        f = [0] * n
        f[s.zero] = t.zero
        for x, y in zip(rest_s, image):
            f[x] = y
        if all(
            f[s.plus[x][y]] == t.plus[f[x]][f[y]] and f[s.times[x][y]] == t.times[f[x]][f[y]]
            for x in range(n)
            for y in range(n)
        ):
            return tuple(f)
    return None


def _keep(s, task):
    if task.cancellative_only and not is_additively_cancellative(s):
        return False
    if task.with_identity_only and s.multiplicative_identity() is None:
        return False
    return True


def enumerate_semirings(task: EnumerationTask, bound=ENUMERATION_BOUND):
    """Yield every semiring of ``task.order`` (one per isomorphism class with ``up_to_iso``).

    Deterministic: addition tables in backtracking order, multiplications in
    endomorphism order.
    """
    n = task.order
    if n > bound:
        raise SizeError(f"order {n} above enumeration bound {bound}")
    count = 0
    for add in commutative_monoids(n):
        for mul in multiplications(add):
            if task.up_to_iso and not is_canonical(add, mul):
                continue
            s = FiniteSemiring.from_tables(add, mul, zero=0, name=f"S{n}.{count}")
            if _keep(s, task):
                count += 1
                yield s


def brute_force_semirings(order):
    """Every table pair on ``0..order-1`` passing validation with zero 0 (no pruning at all)."""
    from .algebra import semiring_algebra, validate_semiring
    from .errors import AxiomViolation

    if order > 2:
        raise SizeError("brute force is only feasible up to order 2")
    n = order
    out = []
    for a in itertools.product(range(n), repeat=n * n):
        add = [list(a[i * n:(i + 1) * n]) for i in range(n)]
        for m in itertools.product(range(n), repeat=n * n):
            mul = [list(m[i * n:(i + 1) * n]) for i in range(n)]
            try:
                out.append(validate_semiring(semiring_algebra(add, mul, 0), 0))
            except AxiomViolation:
                pass
    return out
