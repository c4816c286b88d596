import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from semicomm.algebra import (
    AXIOMS,
    FiniteAlgebra,
    FiniteSemiring,
    Partition,
    additive_inverse,
    additive_reduct,
    is_additively_cancellative,
    is_congruence,
    multiplicative_reduct,
    parse_partition,
    semiring_algebra,
    validate_semiring,
)
from semicomm.congruence import all_partitions
from semicomm.errors import AxiomViolation, ParseError, SizeError
from semicomm.fixtures import EVEN_MOD8_LABELS, boolean, even_mod8, field_f2, semiring_B, zero_ring_z2
from semicomm.formats import dump_json, dump_text, parse_record, parse_semiring

from conftest import census
from oracles import naive_is_congruence


def test_builtins_validate(builtin):
    again = validate_semiring(builtin.alg, builtin.zero)
    assert again == builtin


def test_B_tables():
    s = semiring_B()
    assert s.plus == ((0, 1), (1, 1))
    assert s.has_zero_multiplication()
    assert not is_additively_cancellative(s)
    assert s.multiplicative_identity() is None


def test_even_mod8_arithmetic():
    s = even_mod8()
    for i, a in enumerate(EVEN_MOD8_LABELS):
        for j, b in enumerate(EVEN_MOD8_LABELS):
            assert EVEN_MOD8_LABELS[s.plus[i][j]] == (a + b) % 8
            assert EVEN_MOD8_LABELS[s.times[i][j]] == (a * b) % 8
    assert is_additively_cancellative(s)
    assert all(additive_inverse(s, x) is not None for x in s.elements())


def test_identity_detection():
    assert boolean().multiplicative_identity() == 1
    assert field_f2().multiplicative_identity() == 1
    assert zero_ring_z2().multiplicative_identity() is None


@pytest.mark.parametrize(
    "add, mul, axiom, witness",
    [
        # 0*1 = 1, so 0 does not absorb from the left
        ([[0, 1], [1, 1]], [[0, 1], [0, 1]], "absorbing-zero", (0, 1)),
        ([[0, 1], [0, 1]], [[0, 0], [0, 0]], "add-commutative", (0, 1)),
        ([[1, 1], [1, 1]], [[0, 0], [0, 0]], "add-identity", (0, 0)),
    ],
)
def test_axiom_violation_witness(add, mul, axiom, witness):
    with pytest.raises(AxiomViolation) as exc:
        validate_semiring(semiring_algebra(add, mul, 0), 0)
    assert exc.value.axiom == axiom
    assert exc.value.witness == witness


def test_axiom_order_is_documented():
    assert AXIOMS[0] == "add-associative"
    assert "left-distributive" in AXIOMS and "right-distributive" in AXIOMS


def test_distributivity_failure():
    # (Z3, +) with x*y = 1 off the zero row/column is not distributive
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[0, 0, 0], [0, 1, 1], [0, 1, 1]]
    with pytest.raises(AxiomViolation) as exc:
        validate_semiring(semiring_algebra(add, mul, 0), 0)
    assert exc.value.axiom in ("left-distributive", "mul-associative")


def test_order_bound():
    with pytest.raises(SizeError):
        FiniteAlgebra(17, [("f", 1, list(range(17)))])


def test_table_shape_checked():
    with pytest.raises(ValueError):
        FiniteAlgebra(2, [("f", 2, [0, 1])])


def test_reducts_keep_zero():
    s = semiring_B()
    assert additive_reduct(s).signature == (("+", 2), ("o", 0))
    assert multiplicative_reduct(s).signature == (("*", 2), ("o", 0))


# partitions


@st.composite
def partitions(draw, max_order=6):
    n = draw(st.integers(1, max_order))
    blocks = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return Partition.from_blocks(blocks)


@given(partitions())
def test_partition_string_round_trip(p):
    assert parse_partition(p.order, str(p)) == p


@given(partitions())
def test_partition_bounds(p):
    assert Partition.identity(p.order) <= p <= Partition.full(p.order)
    assert p.is_identity == (p == Partition.identity(p.order))


def test_partition_printing():
    assert str(Partition.identity(3)) == "0"
    assert str(Partition.full(3)) == "1"
    assert str(parse_partition(4, "0,2|1,3")) == "0,2|1,3"
    assert str(parse_partition(4, "3,1")) == "0|1,3|2"


def test_partition_rejects_noncanonical_labels():
    with pytest.raises(ValueError):
        Partition((1, 1))


def test_all_partitions_bell_numbers():
    assert [len(list(all_partitions(n))) for n in range(1, 6)] == [1, 2, 5, 15, 52]


@pytest.mark.parametrize("order", [2, 3])
def test_is_congruence_against_oracle(order):
    for s in census(order):
        for p in all_partitions(order):
            assert is_congruence(s.alg, p) == naive_is_congruence(s.alg, p)


# text format


def test_keyword_and_json_agree():
    kw = """
    order 2   # B
    zero 0
    add
      0 1
      1 1
    mul
      0 0
      0 0
    """
    js = '{"order": 2, "zero": 0, "add": [[0,1],[1,1]], "mul": [[0,0],[0,0]]}'
    assert parse_semiring(kw) == parse_semiring(js) == semiring_B()


@pytest.mark.parametrize(
    "text",
    [
        "order 2 zero 0 add 0 1 1",
        "order 2 zero 0 add 0 1 1 x mul 0 0 0 0",
        "zero 0 add 0 1 1 1 order 2 mul 0 0 0 0",
        "order 2 zero 0 add 0 1 1 1",
        '{"order": 2, "zero": 0, "add": [[0,1],[1,2]], "mul": [[0,0],[0,0]]}',
        '{"order": 2,',
        "order 0 zero 0 add mul",
    ],
)
def test_malformed_input(text):
    with pytest.raises(ParseError):
        parse_record(text)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_canonical_round_trip(order):
    for s in census(order):
        assert parse_semiring(dump_text(s)) == s
        assert parse_semiring(dump_json(s)) == s
        assert dump_text(parse_semiring(dump_text(s))) == dump_text(s)


def test_relabelled_zero_accepted():
    # B with bottom placed at index 1
    s = validate_semiring(semiring_algebra([[0, 0], [0, 1]], [[1, 1], [1, 1]], 1), 1)
    assert s.zero == 1 and s.has_zero_multiplication()


def test_operation_tables_readonly():
    s = semiring_B()
    with pytest.raises(ValueError):
        s.add_table[0, 0] = 1
    assert isinstance(s.add_table, np.ndarray)


def test_semiring_hash_is_structural():
    a = FiniteSemiring.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 0]], name="x")
    assert a == semiring_B() and hash(a) == hash(semiring_B())
    assert len({s for s in itertools.chain(census(2), census(2))}) == 4
