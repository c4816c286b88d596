"""Classification of semirings by commutator definitions and by structure, cross-checked."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .algebra import (
    FiniteSemiring,
    Partition,
    additive_inverse,
    additive_reduct,
    is_additively_cancellative,
)
from .commutator import (
    DIMENSION_BUDGET,
    commutator_is_zero,
    nilpotent_series,
    solvable_series,
)
from .errors import FalsificationError
from .ideals import power_of_S, powers_until_stable, raw_power_is_zero


def nilpotent_via_commutator(s, n, **kw) -> bool:
    """``(1,1]^(n) = 0``."""
    return nilpotent_series(s, n, **kw).is_identity


def supernilpotent_via_commutator(s, n, **kw) -> bool:
    """The commutator of ``n + 1`` copies of the full congruence vanishes."""
    if n < 1:
        raise ValueError("n must be at least 1")
    one = Partition.full(s.order)
    return commutator_is_zero(s, [one] * (n + 1), **kw)


def nilpotent_via_theorem(s: FiniteSemiring, n) -> bool:
    """Additively cancellative and ``S^(n+1) = {o}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return is_additively_cancellative(s) and power_of_S(s, n + 1).is_zero


def solvable_check(s: FiniteSemiring, k, **kw):
    """``(via commutator, via powers)``; the second is None when ``s`` is not additively cancellative."""
    if k < 1:
        raise ValueError("k must be at least 1")
    via_commutator = solvable_series(s, k, **kw).is_identity
    if not is_additively_cancellative(s):
        return via_commutator, None
    return via_commutator, power_of_S(s, 2**k).is_zero


def abelian_check(s: FiniteSemiring, **kw):
    """``(via commutator, via structure)``; raises FalsificationError if they differ."""
    via_commutator = nilpotent_via_commutator(s, 1, **kw)
    via_structure = is_additively_cancellative(s) and s.has_zero_multiplication()
    if via_commutator != via_structure:
        raise FalsificationError(
            "abelian iff cancellative with zero multiplication",
            {"semiring": repr(s), "commutator": via_commutator, "structure": via_structure},
        )
    return via_commutator, via_structure


def reduct_classification(s: FiniteSemiring, n, **kw):
    """``(additive, multiplicative, joint)`` n-supernilpotency.

    ``additive`` is computed by commutator on ``(S, +, o)``, ``multiplicative``
    as the vanishing of all raw ``(n+1)``-fold products, ``joint`` by
    commutator on the whole semiring.
    """
    one = Partition.full(s.order)
    additive = commutator_is_zero(additive_reduct(s), [one] * (n + 1), **kw)
    multiplicative = raw_power_is_zero(s, n + 1)
    joint = supernilpotent_via_commutator(s, n, **kw)
    return additive, multiplicative, joint


def ring_check(s: FiniteSemiring) -> bool:
    """Every element has an additive inverse."""
    return all(additive_inverse(s, x) is not None for x in s.elements())


@dataclass
class ClassificationReport:
    id: str
    order: int
    additively_cancellative: bool
    has_mult_identity: bool
    least_n_nilpotent: int | None
    least_n_supernilpotent: int | None
    least_k_solvable: int | None
    abelian: bool
    is_ring: bool
    powers: list = field(default_factory=list)
    route_agreement: bool = True
    probe_bound: int = 0
    supernilpotent_probe_bound: int = 0

    def to_record(self):
        return asdict(self)


def _least(pred, bound):
    for n in range(1, bound + 1):
        if pred(n):
            return n
    return None


def classify(s: FiniteSemiring, id=None, max_n=None, strict=True, dimension_budget=DIMENSION_BUDGET, **kw):
    """Full report; degrees are probed up to ``max_n`` (default: the order).

    Supernilpotency needs an ``(n+1)``-ary commutator, so its probe stops at
    ``dimension_budget - 1``. With ``strict`` any disagreement between the
    commutator routes and the structural one raises FalsificationError.
    """
    bound = s.order if max_n is None else max_n
    super_bound = min(bound, dimension_budget - 1)
    kw = dict(kw, dimension_budget=dimension_budget)
    cancellative = is_additively_cancellative(s)

    nil = {n: nilpotent_via_commutator(s, n, **kw) for n in range(1, bound + 1)}
    thm = {n: nilpotent_via_theorem(s, n) for n in range(1, bound + 1)}
    sup = {n: supernilpotent_via_commutator(s, n, **kw) for n in range(1, super_bound + 1)}
    agree = all(nil[n] == thm[n] for n in nil) and all(sup[n] == nil[n] for n in sup)
    if strict and not agree:
        raise FalsificationError(
            "n-nilpotent iff cancellative with vanishing (n+1)-th power iff n-supernilpotent",
            {"semiring": repr(s), "nilpotent": nil, "structural": thm, "supernilpotent": sup},
        )
    abelian, _ = abelian_check(s, **kw) if strict else (nil[1] if bound else False, None)

    report = ClassificationReport(
        id=id if id is not None else (s.name or ""),
        order=s.order,
        additively_cancellative=cancellative,
        has_mult_identity=s.multiplicative_identity() is not None,
        least_n_nilpotent=_least(nil.get, bound),
        least_n_supernilpotent=_least(sup.get, super_bound),
        least_k_solvable=_least(lambda k: solvable_series(s, k, **kw).is_identity, bound),
        abelian=abelian,
        is_ring=ring_check(s),
        powers=[sorted(p.elems) for p in powers_until_stable(s)],
        route_agreement=agree,
        probe_bound=bound,
        supernilpotent_probe_bound=super_bound,
    )
    return report
