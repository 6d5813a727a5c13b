import csv
import json
import subprocess
import sys

import pytest

from bergebook.cli import main, parse_budget
from bergebook.constructions import bose_sts, fig1
from bergebook.core import build, read, write
from bergebook.detect import BookCertificate, verify_book

BOOK2 = build(14, [(0, 1, 9), (0, 2, 10), (1, 2, 11), (0, 3, 12), (1, 3, 13)])


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_parse_budget():
    assert parse_budget("1s") == 1.0
    assert parse_budget("500ms") == 0.5
    assert parse_budget("2") == 2.0
    assert parse_budget("1m") == 60.0


def test_gen_fig1(workdir, capsys):
    assert main(["gen", "fig1", "--n", "8", "-o", "f.3hg"]) == 0
    h = read("f.3hg")
    assert h == fig1(8)
    text = (workdir / "f.3hg").read_text()
    assert text.startswith("# bergebook ")
    assert "vertices=8 edges=8" in capsys.readouterr().out


def test_gen_to_stdout(workdir, capsys):
    assert main(["gen", "sts", "--n", "9"]) == 0
    out = capsys.readouterr().out
    assert "\n9 12\n" in out


def test_gen_random_needs_seed(workdir, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "uniform", "--n", "6", "--m", "5"])
    assert exc.value.code == 2
    assert main(["gen", "uniform", "--n", "6", "--m", "5", "--seed", "3", "-o", "u.3hg"]) == 0
    assert len(read("u.3hg")) == 5


@pytest.mark.parametrize("argv", [
    ["gen", "sts", "--n", "7"],
    ["gen", "fig1", "--n", "2"],
    ["gen", "uniform", "--n", "4", "--m", "9", "--seed", "1"],
])
def test_gen_bad_parameters(workdir, argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_detect_book_found(workdir, capsys):
    write(BOOK2, "b.3hg")
    assert main(["detect", "b.3hg", "--book", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["found"] and doc["kind"] == "book" and doc["k"] == 2
    cert = BookCertificate.from_json(doc["certificate"])
    assert verify_book(BOOK2, cert)
    assert list(doc) == ["found", "kind", "k", "certificate", "tool", "config"]


def test_detect_not_found(workdir, capsys):
    write(fig1(8), "f.3hg")
    assert main(["detect", "f.3hg", "--book", "2"]) == 1
    assert json.loads(capsys.readouterr().out)["found"] is False
    assert main(["detect", "f.3hg"]) == 1
    assert main(["detect", "f.3hg", "--cycle", "4"]) == 0


def test_detect_triangle_and_cycle(workdir, capsys):
    write(BOOK2, "b.3hg")
    assert main(["detect", "b.3hg", "--triangle", "-o", "t.json"]) == 0
    doc = json.loads((workdir / "t.json").read_text())
    assert doc["kind"] == "triangle" and doc["certificate"]["core"] == [0, 1, 2]
    assert main(["detect", "b.3hg", "--cycle", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["length"] == 4


@pytest.mark.parametrize("text", [
    "3 1\n0 1 5\n",
    "4 2\n0 1 2\n",
    "4 2\n0 1 2\n2 1 0\n",
    "garbage\n",
    "4 1\n0 0 1\n",
])
def test_malformed_input_exit_2(workdir, text, capsys):
    (workdir / "bad.3hg").write_text(text)
    assert main(["detect", "bad.3hg", "--book", "1"]) == 2
    assert main(["extract", "bad.3hg", "--k", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_exit_2(workdir):
    assert main(["detect", "nope.3hg"]) == 2


def test_usage_errors():
    for argv in (["detect"], ["turan", "--n", "5"], ["extract", "x", "--k", "1"],
                 ["detect", "x", "--book", "0"], ["bogus"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_extract(workdir):
    write(fig1(16), "f.3hg")
    assert main(["extract", "f.3hg", "--k", "2", "-o", "r.json"]) == 0
    doc = json.loads((workdir / "r.json").read_text())
    assert list(doc) == ["tool", "config", "report"]
    rep = doc["report"]
    assert rep["n"] == 16 and rep["m"] == 32 and rep["e_h2"] == 0
    assert all(c["pass"] for c in rep["bound_checks"])


def test_extract_reports_certificate(workdir, capsys):
    write(bose_sts(9), "s.3hg")
    assert main(["extract", "s.3hg", "--k", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["k"] == 2


def test_turan_csv(workdir):
    assert main(["turan", "--n", "5", "--k", "2", "-o", "t.csv"]) == 0
    assert main(["turan", "--n", "4", "--k", "1", "-o", "t.csv", "--witness", "w.3hg"]) == 0
    rows = list(csv.DictReader((workdir / "t.csv").open()))
    assert [(r["n"], r["k"], r["max_edges"], r["optimal_flag"]) for r in rows] == [
        ("5", "2", "4", "true"), ("4", "1", "2", "true")]
    assert rows[0]["seconds"] == ""
    assert len(read("w.3hg")) == 2


def test_turan_budget_marks_non_optimal(workdir, capsys):
    assert main(["turan", "--n", "12", "--k", "2", "--budget", "200ms"]) == 0
    row = next(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert row["optimal_flag"] == "false"


def test_turan_timing_column(workdir, capsys):
    assert main(["turan", "--n", "4", "--k", "2", "--timing"]) == 0
    row = next(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert float(row["seconds"]) >= 0


def test_module_entry_point(workdir):
    proc = subprocess.run([sys.executable, "-m", "bergebook", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("bergebook ")
