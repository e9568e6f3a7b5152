import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from quotloc import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--genus", "2", "--alpha", "3", "--beta", "0"], "4"),
        (["--genus", "2", "--alpha", "1", "--beta", "1"], "-4"),
        (["--genus", "3", "--alpha", "3", "--beta", "0", "--psi", "1"], "4"),
        (["--genus", "3", "--alpha", "6"], "224"),
    ],
)
def test_intersect(capsys, argv, expected):
    code, out, _ = run(capsys, "intersect", *argv)
    assert code == 0 and out.strip() == expected


def test_intersect_bad_degree(capsys):
    code, out, err = run(capsys, "intersect", "--genus", "2", "--alpha", "2")
    assert code != 0
    assert "6g - 6" in err and out == ""


def test_intersect_json_schema(capsys):
    code, out, _ = run(capsys, "intersect", "--genus", "4", "--alpha", "7", "--beta", "1", "--format", "json")
    doc = json.loads(out)
    assert set(doc) == {"command", "config", "results", "suite_pass"}
    (row,) = doc["results"]
    assert {"params", "value", "route", "verdict"} <= set(row)
    assert row["value"] == "-6272/1"
    assert doc["suite_pass"] is True


def test_localize_genus_one(capsys):
    code, out, _ = run(capsys, "localize", "--genus", "1", "-N", "3", "-d", "1", "--route", "a", "--format", "json")
    doc = json.loads(out)
    (row,) = doc["results"]
    assert code == 0
    assert (row["value"], row["reduced"], row["verdict"]) == ("1/1", "1/1", "PASS")


def test_localize_alpha_exp(capsys):
    code, out, _ = run(capsys, "localize", "--genus", "2", "-N", "5", "-d", "3", "--alpha-exp", "5", "--format", "json")
    (row,) = json.loads(out)["results"]
    assert Fraction(row["value"]) == 80 and Fraction(row["reduced"]) == 4 and row["verdict"] == "PASS"


def test_localize_table_csv(capsys):
    code, out, _ = run(capsys, "localize", "--genus", "2", "-N", "5,7", "-d", "3,5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert {r["value"] for r in rows} == {"80/1"}
    assert {(r["N"], r["d"]) for r in rows} == {("5", "3"), ("5", "5"), ("7", "3"), ("7", "5")}


def test_localize_skips_inadmissible_cells(capsys):
    code, out, _ = run(capsys, "localize", "--genus", "1", "-N", "3,9", "-d", "1,2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["results"]) == 1
    assert any("N=9" in n for n in doc["notes"])


def test_localize_nothing_admissible_fails(capsys):
    code, _, _ = run(capsys, "localize", "--genus", "1", "-N", "9", "-d", "1")
    assert code == 1


def test_localize_routes_b_and_closed(capsys):
    for route in ("b", "closed"):
        code, out, _ = run(capsys, "localize", "--genus", "1", "-N", "5", "-d", "3", "--route", route, "--format", "json")
        (row,) = json.loads(out)["results"]
        assert code == 0 and row["value"] == "1/1" and row["route"] == route


def test_verify_routes_records_selection(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "routes", "--genus", "1", "-N", "3", "-d", "1", "--format", "json")
    doc = json.loads(out)
    summary = [r for r in doc["results"] if r["params"].get("check") == "unique normalization"]
    assert code == 0 and summary[0]["selected"] == "genus-corrected"
    assert summary[0]["per_locus_agreement"] is True


@pytest.mark.parametrize("suite", ["lemmas", "consistency", "identities", "golden"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["suite_pass"] is True
    assert all(r["verdict"] == "PASS" for r in doc["results"])


def test_golden_is_rederived(capsys, monkeypatch):
    golden = cli.load_golden()
    golden["intersect"][1]["value"] = "5"
    monkeypatch.setattr(cli, "load_golden", lambda: golden)
    code, out, _ = run(capsys, "verify", "--suite", "golden", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["suite_pass"] is False
    bad = [r for r in doc["results"] if r["verdict"] == "FAIL"]
    assert len(bad) == 1 and bad[0]["params"]["g"] == 2


def test_output_is_deterministic(capsys):
    argv = ["localize", "--genus", "2", "-N", "5,7", "-d", "3", "--format", "json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *(argv + ["--threads", "2"]))[1]
    assert first == second


def test_report_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "table", "--genus-max", "3", "--report", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and doc["command"] == "table" and len(doc["results"]) == 1 + 2 + 3
    assert "suite_pass: True" in out


def test_threads_env(monkeypatch):
    monkeypatch.setenv("QUOTLOC_THREADS", "3")
    from quotloc.localization import default_workers

    assert default_workers() == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quotloc", "intersect", "--genus", "2", "--alpha", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "4"


def test_argparse_rejects_bad_lists(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["localize", "--genus", "1", "-N", "three"])
    assert exc.value.code == 2
