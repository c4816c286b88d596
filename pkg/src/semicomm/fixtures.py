"""Small named semirings used as worked examples and test fixtures."""

from .algebra import FiniteSemiring


def trivial():
    return FiniteSemiring.from_tables([[0]], [[0]], name="trivial")


def semiring_B():
    """``({bot, top}, join, constant-bot)`` with bot = 0, top = 1."""
    return FiniteSemiring.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 0]], name="B")


def boolean():
    """``({0, 1}, or, and)``; 1 is a multiplicative identity."""
    return FiniteSemiring.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 1]], name="Bool")


def zero_ring_z2():
    return FiniteSemiring.from_tables([[0, 1], [1, 0]], [[0, 0], [0, 0]], name="Z2-zero")


def field_f2():
    return FiniteSemiring.from_tables([[0, 1], [1, 0]], [[0, 0], [0, 1]], name="F2")


def even_mod8():
    """``2Z/8Z``: the ring ``{0, 2, 4, 6}`` with arithmetic mod 8.

    Elements are indexed by their value over two, so index ``i`` stands for
    ``2i``; :data:`EVEN_MOD8_LABELS` maps back.
    """
    vals = EVEN_MOD8_LABELS
    add = [[vals.index((a + b) % 8) for b in vals] for a in vals]
    mul = [[vals.index((a * b) % 8) for b in vals] for a in vals]
    return FiniteSemiring.from_tables(add, mul, name="2Z/8Z")


EVEN_MOD8_LABELS = (0, 2, 4, 6)


BUILTINS = {
    "trivial": trivial,
    "B": semiring_B,
    "Bool": boolean,
    "Z2-zero": zero_ring_z2,
    "F2": field_f2,
    "2Z/8Z": even_mod8,
}
