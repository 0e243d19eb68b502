"""Identity registry: canonical contents, verification, derivation checks."""

import pytest

from qseries import catalog
from qseries.catalog import (
    FirstMismatch,
    IdentityEntry,
    MissingSpecialization,
    UnknownIdentity,
    VerifyReport,
    derivation_check,
    registry,
    verify,
    verify_all,
)
from qseries.coeffring import CycRat, ONE
from qseries.laurent import LaurentSeries, ZeroFactor

EXPECTED_IDS = [
    "Cor-a", "Cor-b",
    "A1-a", "A1-b", "A1-c", "A1-d",
    "A2-a", "A2-b", "A2-c", "A2-d",
    "DS1-a", "DS1-b", "DS1-c", "DS1-d",
    "DS2-a", "DS2-b", "DS2-c", "DS2-d",
    "DS3-a", "DS3-b", "DS3-c", "DS3-d",
    "Bprime-a", "Bprime-b", "Bprime-c", "Bprime-d",
    "DS4-a", "DS4-b", "DS4-c", "DS4-d",
    "KL-relation", "Bailey-3psi3",
]


def test_registry_contents():
    reg = registry()
    assert list(reg) == EXPECTED_IDS
    for key, entry in reg.items():
        assert entry.id == key
        assert entry.statement  # every entry states what it claims


def test_registry_read_only():
    with pytest.raises(TypeError):
        registry()["Cor-a"] = None


@pytest.mark.parametrize("identity_id", [
    "Cor-a", "A1-a", "A2-b", "DS2-c", "Bprime-d", "DS4-d", "KL-relation",
    "Bailey-3psi3",
])
def test_verify_representatives(identity_id):
    report = verify(identity_id, 24)
    assert report.status == "equal"
    assert report.first_mismatch is None
    assert report.id == identity_id
    assert report.order == 24
    assert report.elapsed >= 0.0


def test_verify_all_low_order():
    reports = verify_all(16)
    assert [r.id for r in reports] == EXPECTED_IDS
    assert all(r.status == "equal" for r in reports)


def test_verify_all_parallel_matches():
    serial = verify_all(12)
    threaded = verify_all(12, parallel=True)
    assert [(r.id, r.status) for r in serial] == \
           [(r.id, r.status) for r in threaded]


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify("DS9-a")
    with pytest.raises(UnknownIdentity):
        derivation_check("nope")


@pytest.mark.parametrize("identity_id", [
    "A1-a", "A2-c", "DS1-b", "DS3-d", "Bprime-a", "DS4-a",
])
def test_derivation_representatives(identity_id):
    report = derivation_check(identity_id, 20)
    assert report.status == "equal"


def test_derivation_requires_specialization():
    with pytest.raises(MissingSpecialization):
        derivation_check("Cor-a")
    with pytest.raises(MissingSpecialization):
        derivation_check("KL-relation")


def test_every_sum_entry_has_specialization():
    reg = registry()
    with_spec = {k for k, e in reg.items() if e.specialization is not None}
    families = ("A1-", "A2-", "DS1-", "DS2-", "DS3-", "Bprime-", "DS4-")
    expected = {k for k in reg if k.startswith(families)}
    assert with_spec == expected


def test_mismatch_report_contract(monkeypatch):
    bad = IdentityEntry(
        id="FAKE-mismatch",
        statement="deliberately unequal sides",
        lhs=lambda order: LaurentSeries.one(order),
        rhs=lambda order: LaurentSeries.from_terms({0: ONE, 3: ONE}, order),
    )
    monkeypatch.setitem(catalog._REGISTRY, bad.id, bad)
    report = verify(bad.id, 10)
    assert report.status == "mismatch"
    assert report.first_mismatch == FirstMismatch(3, CycRat(0), ONE)


def test_error_report_contract(monkeypatch):
    def boom(order):
        raise ZeroFactor("synthetic vanishing factor")

    bad = IdentityEntry(
        id="FAKE-error",
        statement="raises while expanding",
        lhs=boom,
        rhs=lambda order: LaurentSeries.one(order),
    )
    monkeypatch.setitem(catalog._REGISTRY, bad.id, bad)
    report = verify(bad.id, 10)
    assert report.status == "error"
    assert report.first_mismatch is None
    assert "synthetic vanishing factor" in report.message


def test_statements_mention_resolved_reading():
    # DS4-d's displayed middle term is recorded with its quotient resolution
    assert "quotient" in registry()["DS4-d"].statement
