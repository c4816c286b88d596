"""Polynomial words over the semiring signature.

Variables come in groups: ``x<i>_<j>`` is component ``j`` of group ``i``
(both 1-based), ``#<k>`` is the constant element ``k``. A valuation picks,
for every group, either its first bound tuple or its second one.

Grammar::

    term := sum
    sum  := prod ('+' prod)*
    prod := atom ('*' atom)*
    atom := 'x' INT '_' INT | '#' INT | '(' sum ')'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Union

from .errors import ArityError, HypothesisError, ParseError, TermIndexError


@dataclass(frozen=True)
class Var:
    group: int
    comp: int

    def __str__(self):
        return f"x{self.group}_{self.comp}"


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return f"#{self.value}"


@dataclass(frozen=True)
class Sum:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a Sum needs at least two children")

    def __str__(self):
        return " + ".join(map(str, self.children))


@dataclass(frozen=True)
class Product:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("a Product needs at least two children")

    def __str__(self):
        return "*".join(f"({c})" if isinstance(c, Sum) else str(c) for c in self.children)


PolyTerm = Union[Var, Const, Sum, Product]


def make_sum(children):
    children = tuple(children)
    if not children:
        raise ValueError("empty sum")
    return children[0] if len(children) == 1 else Sum(children)


def make_product(children):
    """Product node with nested products flattened (multiplication is associative)."""
    flat = []
    for c in children:
        flat.extend(c.children if isinstance(c, Product) else [c])
    if not flat:
        raise ValueError("empty product")
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


_TOKEN = re.compile(r"\s*(?:(x)(\d+)_(\d+)|(#)(\d+)|([+*()]))")


def _tokenize(src):
    pos = 0
    out = []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            pos += len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[pos:pos + 1]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(4) if m.group(4) else m.start(6)
        if m.group(1):
            out.append(("var", (int(m.group(2)), int(m.group(3))), start))
        elif m.group(4):
            out.append(("const", int(m.group(5)), start))
        else:
            out.append((m.group(6), None, start))
        pos = m.end()
    out.append(("end", None, len(src)))
    return out


def parse_term(src: str, arities=None) -> PolyTerm:
    """Parse ``src``; with ``arities`` (group lengths) variable indices are range-checked."""
    toks = _tokenize(src)
    i = 0

    def peek():
        return toks[i][0]

    def expect(kind):
        nonlocal i
        if toks[i][0] != kind:
            raise ParseError(f"expected {kind!r}, found {toks[i][0]!r}", toks[i][2])
        i += 1

    def atom():
        nonlocal i
        kind, val, at = toks[i]
        if kind == "var":
            i += 1
            g, c = val
            if g < 1 or c < 1:
                raise TermIndexError(f"variable x{g}_{c} at position {at}: indices start at 1")
            if arities is not None and (g > len(arities) or c > arities[g - 1]):
                raise TermIndexError(f"variable x{g}_{c} at position {at} outside arities {list(arities)}")
            return Var(g, c)
        if kind == "const":
            i += 1
            return Const(val)
        if kind == "(":
            i += 1
            t = sum_()
            expect(")")
            return t
        raise ParseError(f"unexpected {kind!r}", at)

    def prod():
        factors = [atom()]
        while peek() == "*":
            expect("*")
            factors.append(atom())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def sum_():
        terms = [prod()]
        while peek() == "+":
            expect("+")
            terms.append(prod())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    t = sum_()
    if peek() != "end":
        raise ParseError(f"trailing input {peek()!r}", toks[i][2])
    return t


def is_monomial(t) -> bool:
    if isinstance(t, (Var, Const)):
        return True
    if isinstance(t, Product):
        return all(is_monomial(c) for c in t.children)
    return False


def normalize_to_monomials(p) -> list:
    """Distribute products over sums; returns the monomials whose sum equals ``p``.

    Products are flattened but never reordered. The list follows the
    left-to-right expansion order: ``(x+y)(u+v)`` gives ``xu, xv, yu, yv``.
    Output size is the product of the branch counts, exponential in the
    nesting depth in the worst case.
    """
    if isinstance(p, (Var, Const)):
        return [p]
    if isinstance(p, Sum):
        return [m for c in p.children for m in normalize_to_monomials(c)]
    parts = [normalize_to_monomials(c) for c in p.children]
    return [make_product(combo) for combo in itertools.product(*parts)]


def groups_of(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.group])
    if isinstance(t, Const):
        return frozenset()
    return frozenset().union(*(groups_of(c) for c in t.children))


def max_components(t) -> dict:
    """Largest component index referenced for each group."""
    out = {}
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out[node.group] = max(out.get(node.group, 0), node.comp)
        elif isinstance(node, (Sum, Product)):
            stack.extend(node.children)
    return out


@dataclass(frozen=True)
class Valuation:
    """Per-group choice between two bound tuples: bit 0 picks ``a[i]``, bit 1 picks ``b[i]``."""

    a: tuple
    b: tuple
    choice: tuple

    def __post_init__(self):
        if not len(self.a) == len(self.b) == len(self.choice):
            raise ArityError("a, b and choice must cover the same groups")
        for ai, bi in zip(self.a, self.b):
            if len(ai) != len(bi):
                raise ArityError("paired tuples must have equal length")

    @property
    def n(self):
        return len(self.choice)

    @property
    def b_count(self):
        return sum(self.choice)

    def tuples(self):
        return [bi if c else ai for ai, bi, c in zip(self.a, self.b, self.choice)]


def evaluate_at(p, groups, s) -> int:
    """Value of ``p`` with group ``i`` bound to the tuple ``groups[i-1]``."""
    if isinstance(p, Var):
        return groups[p.group - 1][p.comp - 1]
    if isinstance(p, Const):
        if not 0 <= p.value < s.order:
            raise TermIndexError(f"constant #{p.value} outside the carrier")
        return p.value
    vals = [evaluate_at(c, groups, s) for c in p.children]
    if isinstance(p, Sum):
        return s.sum(vals)
    return s.product(vals)


def evaluate(p, v: Valuation, s) -> int:
    return evaluate_at(p, v.tuples(), s)


def valuations(a, b):
    a, b = tuple(map(tuple, a)), tuple(map(tuple, b))
    for choice in itertools.product((0, 1), repeat=len(a)):
        yield Valuation(a, b, choice)


def _parity_split(p, a, b, s):
    even, odd = [], []
    for v in valuations(a, b):
        (odd if v.b_count % 2 else even).append(evaluate(p, v, s))
    return s.sum(even), s.sum(odd)


def parity_sums(m, a, b, s):
    """Sums of ``m^v`` over valuations with an even, resp. odd, number of second-tuple picks.

    ``m`` must be a monomial touching fewer groups than there are
    (``len(a)``); for such monomials the two sums coincide in every semiring.
    """
    n = len(a)
    if not is_monomial(m):
        raise ValueError(f"{m} is not a monomial")
    if n < 2:
        raise ArityError("need at least two variable groups")
    k = len(groups_of(m))
    if k >= n:
        raise ArityError(f"monomial touches {k} of {n} groups; needs fewer")
    return _parity_split(m, a, b, s)


def parity_sums_poly(p, a, b, s):
    """Even and odd valuation sums of a polynomial whose monomials each miss some group."""
    n = len(a)
    if n < 2:
        raise ArityError("need at least two variable groups")
    for m in normalize_to_monomials(p):
        if len(groups_of(m)) >= n:
            raise HypothesisError(f"monomial {m} touches all {n} groups")
    return _parity_split(p, a, b, s)


def random_tuples(rng, arities, order):
    return tuple(tuple(rng.randrange(order) for _ in range(k)) for k in arities)


def _tree(rng, leaves, depth, node):
    if len(leaves) == 1:
        return leaves[0]
    cap = 1 << (depth - 1)
    lo = max(1, len(leaves) - cap)
    hi = min(len(leaves) - 1, cap)
    cut = rng.randint(lo, hi)
    return node([_tree(rng, leaves[:cut], depth - 1, node), _tree(rng, leaves[cut:], depth - 1, node)])


def random_monomial(rng, groups, arities, order, max_depth=4, max_leaves=6, const_prob=0.2):
    """Random product touching every group in ``groups`` (1-based) and no other.

    Leaves are variables of those groups, with the occasional constant.
    """
    groups = sorted(groups)
    if len(groups) > max_leaves:
        raise ValueError("more groups than leaves")
    count = rng.randint(max(len(groups), 1), max_leaves)
    leaves = [Var(g, rng.randint(1, arities[g - 1])) for g in groups]
    while len(leaves) < count:
        if groups and rng.random() >= const_prob:
            g = rng.choice(groups)
            leaves.append(Var(g, rng.randint(1, arities[g - 1])))
        else:
            leaves.append(Const(rng.randrange(order)))
    rng.shuffle(leaves)
    return _tree(rng, leaves, max_depth, make_product)


def random_term(rng, arities, order, max_depth=4, max_leaves=6):
    """Random polynomial mixing sums and products."""
    count = rng.randint(1, max_leaves)
    leaves = []
    for _ in range(count):
        if rng.random() < 0.2:
            leaves.append(Const(rng.randrange(order)))
        else:
            g = rng.randint(1, len(arities))
            leaves.append(Var(g, rng.randint(1, arities[g - 1])))

    def node(children):
        return make_sum(children) if rng.random() < 0.5 else make_product(children)

    return _tree(rng, leaves, max_depth, node)
