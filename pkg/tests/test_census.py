import json

import pytest

from semicomm.census import (
    COMMUTATOR_FLAGS,
    STRUCTURE_FLAGS,
    parity_instances,
    run_census,
    run_parity_property,
    verify_semiring,
)
from semicomm.enumeration import EnumerationTask
from semicomm.errors import FalsificationError, SizeError
from semicomm.fixtures import BUILTINS, semiring_B

# regression anchors frozen after the first verified run
GOLDEN_ORDER3 = {
    "algebras": 22,
    "abelian": 1,
    "additively_cancellative": 2,
    "rings": 2,
    "with_identity": 6,
    "all_congruences_ideal_induced": 9,
    "nilpotent_by_degree": {"1": 1, "none": 21},
    "supernilpotent_by_degree": {"1": 1, "none": 21},
    "solvable_by_degree": {"1": 1, "none": 21},
}
GOLDEN_ORDER4 = {
    "algebras": 283,
    "additively_cancellative": 11,
    "rings": 11,
    "zero_rings": 2,
    "with_identity": 40,
    "all_congruences_ideal_induced": 28,
    "nilpotent_by_degree": {"1": 2, "2": 2, "none": 279},
}


def test_order_one():
    records, summary = run_census(EnumerationTask(1))
    assert len(records) == 1 and records[0].report.abelian
    assert summary["all_flags_pass"]


def test_order_two():
    records, summary = run_census(EnumerationTask(2))
    assert summary["algebras"] == 4 and summary["abelian"] == 1
    assert summary["all_flags_pass"]
    assert all(all(r.flags[f] for f in STRUCTURE_FLAGS + COMMUTATOR_FLAGS) for r in records)


def test_order_three_golden():
    records, summary = run_census(EnumerationTask(3))
    assert summary["all_flags_pass"]
    for key, value in GOLDEN_ORDER3.items():
        assert summary[key] == value, key
    json.dumps([r.to_record() for r in records])


def test_order_four_structure_golden():
    _, summary = run_census(EnumerationTask(4))
    assert summary["full_checks"] is False and summary["all_flags_pass"]
    for key, value in GOLDEN_ORDER4.items():
        assert summary[key] == value, key


def test_parallel_matches_sequential():
    seq, s1 = run_census(EnumerationTask(2))
    par, s2 = run_census(EnumerationTask(2), jobs=2)
    assert [r.to_record() for r in seq] == [r.to_record() for r in par]
    assert s1 == s2


def test_census_bound():
    with pytest.raises(SizeError):
        run_census(EnumerationTask(5))


def test_fixtures_verify(builtin):
    rec = verify_semiring(builtin, full=True)
    assert set(rec.flags) == set(STRUCTURE_FLAGS + COMMUTATOR_FLAGS)
    assert all(rec.flags.values())


def test_planted_fault_is_caught(monkeypatch):
    import semicomm.census as cm
    from semicomm.ideals import IdealSet

    monkeypatch.setattr(cm, "ideal_commutator", lambda ideals: IdealSet(ideals[0].semiring, [0]))
    with pytest.raises(FalsificationError) as exc:
        cm.verify_semiring(BUILTINS["F2"](), "F2")
    assert "ideal_commutator_powers" in exc.value.claim


def test_planted_commutator_fault_is_caught(monkeypatch):
    import semicomm.census as cm
    from semicomm.algebra import Partition

    monkeypatch.setattr(cm, "binary_commutator_tc", lambda s, a, b: Partition.identity(s.order))
    with pytest.raises(FalsificationError) as exc:
        cm.verify_semiring(semiring_B(), "B")
    assert "dual_commutator_agreement" in exc.value.claim


def test_parity_property_deterministic():
    a = [(str(m), s.key(), x, y) for m, s, x, y in parity_instances(seed=3, count=50)]
    b = [(str(m), s.key(), x, y) for m, s, x, y in parity_instances(seed=3, count=50)]
    assert a == b
    assert run_parity_property(seed=3, count=200) == 200
