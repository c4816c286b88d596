"""Higher term-condition commutators of finite algebras.

For congruences ``a_1, ..., a_n`` the cube algebra is the subalgebra of
``A^(2^n)`` generated by the constant tuples and, for every dimension ``i``
and pair ``(a, b)`` of ``a_i``, the tuple holding ``a`` on the coordinates
whose ``i``-th bit is 0 and ``b`` on the others. Its members are exactly the
families ``(p^v)_v`` of polynomial values over all valuations, so the term
condition becomes a scan over the cube algebra. Coordinate ``v`` is an
integer whose bit ``i`` selects the second tuple of dimension ``i``; the last
dimension plays the role of the centralized congruence.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Partition, as_algebra, is_congruence
from .congruence import all_congruences, extend, meet
from .errors import SizeError

DIMENSION_BUDGET = 4
TUPLE_BUDGET = 2_000_000
_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True)
class CounterexampleCube:
    """A cube of the cube algebra violating the term condition.

    Falsy, so ``if centralizes(...)`` reads naturally.
    """

    dim: int
    values: tuple

    def __bool__(self):
        return False

    @property
    def conclusion(self):
        half = 1 << (self.dim - 1)
        return self.values[half - 1], self.values[2 * half - 1]

    @property
    def premises(self):
        half = 1 << (self.dim - 1)
        return [(self.values[w], self.values[w + half]) for w in range(half - 1)]


class CubeAlgebra:
    """Closed set of ``2^dim``-tuples, rows sorted lexicographically."""

    def __init__(self, alg, dim, rows):
        self.algebra = alg
        self.dim = dim
        self.rows = rows

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return (tuple(r) for r in self.rows.tolist())

    def __contains__(self, tup):
        tup = np.asarray(tup)
        return bool((self.rows == tup).all(axis=1).any())


def _check_args(alg, args):
    if len(args) < 2:
        raise ValueError("a commutator needs at least two congruences")
    for p in args:
        if p.order != alg.order:
            raise ValueError("congruence over a different carrier")
        if not is_congruence(alg, p):
            raise ValueError(f"{p} is not a congruence")


def _generators(order, args):
    dim = len(args)
    size = 1 << dim
    gens = [[x] * size for x in range(order)]
    for i, p in enumerate(args):
        for a, b in p.nontrivial_pairs():
            gens.append([b if (v >> i) & 1 else a for v in range(size)])
    return np.array(gens, dtype=np.int64)


class _Closure:
    """Closure of a generating set of tuples under the basic operations, applied coordinatewise.

    Algebras whose binary operations are a commutative monoid ``+`` and/or an
    associative ``*`` distributing over it get the sum-of-products route:
    first all products of generators, then all sums of those. Anything else
    falls back to breadth-first rounds combining new tuples with all known ones.
    """

    def __init__(self, alg, dim, gens, budget=TUPLE_BUDGET):
        self.alg = alg
        self.dim = dim
        self.size = 1 << dim
        self.budget = budget
        if alg.order ** self.size >= 2**62:
            raise SizeError(f"cube tuples of order {alg.order}, dimension {dim} do not fit the packed encoding")
        self.weights = alg.order ** np.arange(self.size - 1, -1, -1, dtype=np.int64)
        self.ops = []
        for op in alg.ops:
            if op.arity == 0:
                continue
            t = np.asarray(op.table)
            sym = op.arity == 2 and np.array_equal(t, t.T)
            self.ops.append((op.name, op.arity, t, sym))
        self.gens = self._decode(np.unique(gens @ self.weights))
        self._budget_check(len(self.gens))
        self.codes = np.unique(self.gens @ self.weights)
        self.rows = self.gens
        self.done = False
        self.plan = _semiring_plan(alg)

    def _budget_check(self, n):
        if n > self.budget:
            raise SizeError(f"cube algebra exceeds the tuple budget of {self.budget}")

    def _decode(self, codes):
        return (codes[:, None] // self.weights[None, :]) % self.alg.order

    def _absorb(self, res, stop):
        """Merge result rows into the known set; returns (new rows, stop hit or None)."""
        c = np.unique(res.reshape(-1, self.size) @ self.weights)
        c = c[~np.isin(c, self.codes, assume_unique=True)]
        rows = self._decode(c)
        if stop is not None and len(c):
            hit = stop(rows)
            if hit is not None:
                return rows, rows[hit]
        self.codes = np.union1d(self.codes, c)
        self._budget_check(len(self.codes))
        return rows, None

    def run(self, stop=None, on_stage=None):
        """Close completely, or until ``stop(rows)`` flags a row (returned) or ``on_stage(rows)`` is true.

        ``stop`` sees every batch of new tuples; ``on_stage`` sees the whole
        known set at intermediate checkpoints.
        """
        if stop is not None:
            hit = stop(self.rows)
            if hit is not None:
                return self.rows[hit]
        if self.plan is None:
            hit = self._run_rounds(stop, on_stage)
        else:
            hit = self._run_sum_of_products(stop, on_stage)
        if hit is None and not self.done:
            return None
        return hit

    def _stage(self, on_stage, force=False):
        if on_stage is None:
            return False
        if not force and len(self.codes) < 2 * self._last_stage:
            return False
        self._last_stage = len(self.codes)
        self.rows = self._decode(self.codes)
        return bool(on_stage(self.rows))

    def _run_rounds(self, stop, on_stage):
        self._last_stage = len(self.codes)
        frontier = self.rows
        while len(frontier):
            fresh = []
            for _, arity, table, sym in self.ops:
                for res in self._products(arity, table, sym, frontier, self._decode(self.codes)):
                    rows, hit = self._absorb(res, stop)
                    if hit is not None:
                        return hit
                    fresh.append(rows)
            frontier = np.concatenate(fresh) if fresh else frontier[:0]
            if self._stage(on_stage, force=True):
                return None
        self.rows = self._decode(self.codes)
        self.done = True
        return None

    def _products(self, arity, table, sym, F, A):
        D = self.size
        if arity == 1:
            yield table[F]
            return
        positions = [0] if sym else range(arity)
        other = len(A) ** (arity - 1) * D
        step = max(1, _CHUNK_CELLS // max(other, 1))
        for pos in positions:
            for start in range(0, len(F), step):
                chunk = F[start:start + step]
                idx = []
                for j in range(arity):
                    src = chunk if j == pos else A
                    shape = [1] * arity + [D]
                    shape[j] = len(src)
                    idx.append(src.reshape(shape))
                yield table[tuple(idx)]

    def _run_sum_of_products(self, stop, on_stage):
        add, mul, add_identity = self.plan
        self._last_stage = len(self.codes)
        products = self.gens
        if mul is not None:
            # every product of generators is a left-to-right word
            frontier = self.gens
            step = max(1, _CHUNK_CELLS // max(len(self.gens) * self.size, 1))
            while len(frontier):
                fresh = []
                for start in range(0, len(frontier), step):
                    chunk = frontier[start:start + step]
                    res = mul[chunk[:, None, :], self.gens[None, :, :]]
                    rows, hit = self._absorb(res, stop)
                    if hit is not None:
                        return hit
                    fresh.append(rows)
                frontier = np.concatenate(fresh)
                if self._stage(on_stage):
                    return None
            products = self._decode(self.codes)
        if add is not None:
            # grow the submonoid generated by the products one product at a time:
            # A <- A + <m>
            zero = np.full(self.size, add_identity, dtype=np.int64)
            rows, hit = self._absorb(zero[None, :], stop)
            if hit is not None:
                return hit
            monoid = np.array([zero @ self.weights], dtype=np.int64)
            for m in products:
                code = m @ self.weights
                if np.isin(code, monoid):
                    continue
                cur = self._decode(monoid)
                while len(cur):
                    res = add[cur, m[None, :]]
                    c = np.unique(res @ self.weights)
                    c = c[~np.isin(c, monoid, assume_unique=True)]
                    if not len(c):
                        break
                    monoid = np.union1d(monoid, c)
                    cur = self._decode(c)
                    _, hit = self._absorb(cur, stop)
                    if hit is not None:
                        return hit
                if self._stage(on_stage):
                    return None
        self.rows = self._decode(self.codes)
        self.done = True
        return None


def _semiring_plan(alg):
    """``(add table, mul table, additive identity)`` when the sum-of-products route applies, else None."""
    add = mul = None
    for op in alg.ops:
        if op.arity == 0:
            continue
        if op.arity != 2 or op.name not in ("+", "*"):
            return None
        t = np.asarray(op.table)
        if op.name == "+":
            add = t
        else:
            mul = t
    n = alg.order
    R = np.arange(n)
    identity = None
    if add is not None:
        x, y, z = R[:, None, None], R[None, :, None], R[None, None, :]
        if not np.array_equal(add, add.T) or not np.array_equal(add[add[x, y], z], add[x, add[y, z]]):
            return None
        ids = [e for e in range(n) if np.array_equal(add[e], R)]
        if not ids:
            return None
        identity = ids[0]
    if mul is not None:
        lhs = mul[mul[R[:, None, None], R[None, :, None]], R[None, None, :]]
        rhs = mul[R[:, None, None], mul[R[None, :, None], R[None, None, :]]]
        if not np.array_equal(lhs, rhs):
            return None
    if add is not None and mul is not None:
        x, y, z = R[:, None, None], R[None, :, None], R[None, None, :]
        if not np.array_equal(mul[x, add[y, z]], add[mul[x, y], mul[x, z]]):
            return None
        if not np.array_equal(mul[add[x, y], z], add[mul[x, z], mul[y, z]]):
            return None
    return add, mul, identity


def _violations(rows, labels, dim):
    half = 1 << (dim - 1)
    lab = labels[rows]
    eq = lab[:, :half] == lab[:, half:]
    bad = eq[:, : half - 1].all(axis=1) & ~eq[:, half - 1]
    return np.nonzero(bad)[0]


def _first_violation(labels, dim):
    def stop(rows):
        idx = _violations(rows, labels, dim)
        return int(idx[0]) if len(idx) else None

    return stop


def generate_cube(alg, args, budget=TUPLE_BUDGET, dimension_budget=DIMENSION_BUDGET) -> CubeAlgebra:
    """The full cube algebra for ``args`` (one dimension per congruence)."""
    alg = as_algebra(alg)
    _check_args(alg, args)
    _check_dimension(len(args), dimension_budget)
    cl = _Closure(alg, len(args), _generators(alg.order, args), budget)
    cl.run()
    return CubeAlgebra(alg, len(args), cl.rows)


def _check_dimension(dim, dimension_budget):
    if dim > dimension_budget:
        raise SizeError(
            f"commutator arity {dim} exceeds the dimension budget {dimension_budget}; "
            "for semirings, decide supernilpotency structurally (additive cancellativity "
            "and vanishing powers) instead"
        )


def centralizes(alg, args, delta: Partition, budget=TUPLE_BUDGET, dimension_budget=DIMENSION_BUDGET):
    """Term condition ``C(args[0], ..., args[-2], args[-1]; delta)``.

    Returns True, or the first violating :class:`CounterexampleCube` met
    during generation.
    """
    alg = as_algebra(alg)
    _check_args(alg, args)
    dim = len(args)
    _check_dimension(dim, dimension_budget)
    labels = np.asarray(delta.labels)
    stop = _first_violation(labels, dim)
    cl = _Closure(alg, dim, _generators(alg.order, args), budget)
    row = cl.run(stop=stop)
    if row is not None:
        return CounterexampleCube(dim, tuple(int(v) for v in row))
    return True


def _least_delta(alg, rows, dim, delta):
    half = 1 << (dim - 1)
    while True:
        idx = _violations(rows, np.asarray(delta.labels), dim)
        if not len(idx):
            return delta
        pairs = {(int(a), int(b)) for a, b in zip(rows[idx, half - 1], rows[idx, 2 * half - 1])}
        delta = extend(alg, delta, pairs)


@functools.lru_cache(maxsize=8192)
def _commutator_cached(alg, args, budget, dimension_budget):
    dim = len(args)
    state = {"delta": Partition.identity(alg.order)}

    def on_stage(rows):
        # pairs forced by some of the cubes are forced by all of them, so a
        # full partial result is final
        state["delta"] = _least_delta(alg, rows, dim, state["delta"])
        return state["delta"].is_full

    cl = _Closure(alg, dim, _generators(alg.order, args), budget)
    cl.run(on_stage=on_stage)
    if cl.done:
        on_stage(cl.rows)
    return state["delta"]


def higher_commutator(alg, args, budget=TUPLE_BUDGET, dimension_budget=DIMENSION_BUDGET) -> Partition:
    """Least congruence ``d`` with ``C(args; d)``: the ``n``-ary commutator."""
    alg = as_algebra(alg)
    args = tuple(args)
    _check_args(alg, args)
    _check_dimension(len(args), dimension_budget)
    return _commutator_cached(alg, args, budget, dimension_budget)


def commutator_is_zero(alg, args, **kw) -> bool:
    alg = as_algebra(alg)
    return bool(centralizes(alg, list(args), Partition.identity(alg.order), **kw))


def _binary_matrices(alg, alpha, beta):
    """Rows ``(p(a,c), p(a,d), p(b,c), p(b,d))`` for unary-in-x polynomials, one x pair at a time."""
    n = alg.order
    ops = [(op.arity, op.table.tolist()) for op in alg.ops if op.arity > 0]
    ys = [(c, d, c, d) for c, d in beta.nontrivial_pairs()]
    diag = [(s, s, s, s) for s in range(n)]
    out = set()
    for a, b in alpha.nontrivial_pairs():
        found = set(diag) | set(ys) | {(a, a, b, b)}
        frontier = list(found)
        while frontier:
            fresh = []
            known = list(found)
            for arity, table in ops:
                for combo in _combos_with_new(frontier, known, arity):
                    row = []
                    for k in range(4):
                        v = table
                        for m in combo:
                            v = v[m[k]]
                        row.append(v)
                    row = tuple(row)
                    if row not in found:
                        found.add(row)
                        fresh.append(row)
            frontier = fresh
        out |= found
    return out


def _combos_with_new(frontier, known, arity):
    """Argument tuples over ``known`` using at least one ``frontier`` member, each once."""
    recent = set(frontier)
    older = [m for m in known if m not in recent]
    # the first frontier position is j; earlier positions come from older members only
    for j in range(arity):
        yield from itertools.product(*([older] * j + [frontier] + [known] * (arity - j - 1)))


def _binary_centralizes(matrices, delta):
    lab = delta.labels
    return all(lab[m[2]] == lab[m[3]] for m in matrices if lab[m[0]] == lab[m[1]])


def binary_commutator_tc(alg, alpha: Partition, beta: Partition) -> Partition:
    """Binary commutator through the single-variable matrix form of the term condition.

    Independent of :func:`higher_commutator`: it builds the 2x2 polynomial
    matrices for one ``alpha`` pair at a time and takes the meet of every
    congruence satisfying ``p(a,c) d p(a,d) => p(b,c) d p(b,d)``.
    """
    alg = as_algebra(alg)
    _check_args(alg, [alpha, beta])
    mats = _binary_matrices(alg, alpha, beta)
    result = Partition.full(alg.order)
    for delta in all_congruences(alg):
        if _binary_centralizes(mats, delta):
            result = meet(result, delta)
    return result


def nilpotent_series(alg, k, **kw) -> Partition:
    """``(1,1]^(k)``: ``[1,1]``, then ``[1, previous]``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    alg = as_algebra(alg)
    one = Partition.full(alg.order)
    cur = higher_commutator(alg, [one, one], **kw)
    for _ in range(k - 1):
        if cur.is_identity:
            break
        cur = higher_commutator(alg, [one, cur], **kw)
    return cur


def solvable_series(alg, k, **kw) -> Partition:
    """``[1]^(k)``: ``[1,1]``, then ``[previous, previous]``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    alg = as_algebra(alg)
    one = Partition.full(alg.order)
    cur = higher_commutator(alg, [one, one], **kw)
    for _ in range(k - 1):
        if cur.is_identity:
            break
        cur = higher_commutator(alg, [cur, cur], **kw)
    return cur


def clear_caches():
    """Drop memoized commutators and translation lists (for cold timings)."""
    from . import congruence

    _commutator_cached.cache_clear()
    congruence._translation_cache.clear()
