"""Command-line interface, exercised in-process through main(argv)."""

import json

import pytest

from qseries import catalog, cli
from qseries.catalog import IdentityEntry
from qseries.coeffring import ONE
from qseries.laurent import LaurentSeries


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_list_text(capsys):
    code, out, err = run(capsys, "list")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 32
    assert lines[0].startswith("Cor-a")
    assert err == ""


def test_list_json(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert len(rows) == 32
    assert all(set(row) == {"id", "statement"} for row in rows)
    assert rows[-1]["id"] == "Bailey-3psi3"


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "A1-a", "--order", "20")
    assert code == 0
    assert out.startswith("A1-a")
    assert "equal" in out
    assert "order=20" in out


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "Cor-b",
                       "--order", "15", "--format", "json")
    assert code == 0
    row = json.loads(out)
    assert row["id"] == "Cor-b"
    assert row["order"] == 15
    assert row["status"] == "equal"
    assert row["first_mismatch"] is None
    assert isinstance(row["elapsed_ms"], int)


def test_verify_unknown_identity(capsys):
    code, out, err = run(capsys, "verify", "--identity", "A9-z")
    assert code == 2
    assert out == ""
    assert "unknown identity" in err


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify-all", "--order", "12")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 32
    assert [line.split()[0] for line in lines] == sorted(catalog.registry())
    assert all("equal" in line for line in lines)


def test_verify_all_parallel_json(capsys):
    code, out, _ = run(capsys, "verify-all", "--order", "10",
                       "--parallel", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert len(rows) == 32
    assert all(row["status"] == "equal" for row in rows)


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    bad = IdentityEntry(
        id="FAKE-cli",
        statement="unequal on purpose",
        lhs=lambda order: LaurentSeries.one(order),
        rhs=lambda order: LaurentSeries.from_terms({1: ONE}, order),
    )
    monkeypatch.setitem(catalog._REGISTRY, bad.id, bad)
    code, out, _ = run(capsys, "verify", "--identity", "FAKE-cli",
                       "--order", "8", "--format", "json")
    assert code == 1
    row = json.loads(out)
    assert row["status"] == "mismatch"
    assert row["first_mismatch"]["exponent"] == 0


def test_derivation(capsys):
    code, out, _ = run(capsys, "derivation", "--identity", "DS1-a",
                       "--order", "15")
    assert code == 0
    assert "equal" in out


def test_derivation_without_specialization(capsys):
    code, _, err = run(capsys, "derivation", "--identity", "KL-relation")
    assert code == 2
    assert "no recorded specialization" in err


def test_counts_text(capsys):
    code, out, _ = run(capsys, "counts", "--max-n", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split() == ["n", "pbar", "pbar_d", "pp", "pp_d"]
    assert lines[1].split() == ["0", "1", "1", "1", "1"]
    assert lines[2].split() == ["1", "2", "2", "4", "4"]
    assert lines[5].split()[1] == "14"  # pbar(4)


def test_counts_json(capsys):
    code, out, _ = run(capsys, "counts", "--max-n", "2", "--format", "json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rows[1] == {"n": 1, "overpartitions": 2, "overpartitions_distinct": 2,
                       "pairs": 4, "pairs_distinct": 4}


@pytest.mark.parametrize("argv", [
    ("verify", "--identity", "A1-a", "--order", "0"),
    ("counts", "--max-n", "-1"),
    ("no-such-command",),
    (),
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc_info:
        cli.main(list(argv))
    assert exc_info.value.code == 2


def test_env_default_order(capsys, monkeypatch):
    monkeypatch.setenv("QSERIES_DEFAULT_ORDER", "9")
    code, out, _ = run(capsys, "verify", "--identity", "Cor-a",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["order"] == 9


def test_env_default_order_invalid(monkeypatch):
    monkeypatch.setenv("QSERIES_DEFAULT_ORDER", "zero")
    with pytest.raises(SystemExit):
        cli.main(["list"])
