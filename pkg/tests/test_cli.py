import csv
import io
import json

import pytest

from schroeder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "ss-prime", "--n", "2")
    assert code == 0
    assert out == "-\n2:1\n2:2\n"


def test_enumerate_json(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--family", "requisite", "--n", "4", "--p", "2",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 4 and doc["p"] == 2
    assert len(doc["elements"]) == 3  # C(3,1)


def test_enumerate_csv(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--family", "ss-prime", "--n", "3", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["element", "height"]
    assert len(rows) == 12  # header + 11 elements


def test_enumerate_n1_is_usage_error(capsys):
    code, _, err = run(capsys, "enumerate", "--family", "ss-prime", "--n", "1")
    assert code == 2
    assert "n >= 2" in err


def test_enumerate_guard(capsys):
    code, _, err = run(capsys, "enumerate", "--family", "ss-prime", "--n", "13")
    assert code == 3
    assert "--max-n" in err


def test_enumerate_bad_family_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(capsys, "enumerate", "--family", "nope", "--n", "3")
    assert exc.value.code == 2


def test_invariants_pass(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    by_name = {r["name"]: r for r in doc["rows"]}
    assert by_name["|SS'|"]["formula_value"] == 45
    assert by_name["idempotents"]["oracle_value"] == 14
    assert by_name["Rstar-classes p=2"]["formula_value"] == 5
    assert all(r["status"] == "PASS" for r in doc["rows"])


def test_invariants_threaded_output_is_identical(capsys, monkeypatch):
    code, out1, _ = run(capsys, "invariants", "--n", "4", "--format", "csv")
    monkeypatch.setenv("SCHROEDER_THREADS", "4")
    code2, out2, _ = run(capsys, "invariants", "--n", "4", "--format", "csv")
    assert code == code2 == 0
    strip = lambda text: [row[:4] for row in csv.reader(io.StringIO(text))]
    assert strip(out1) == strip(out2)  # identical apart from runtime column


def test_green_classical(capsys):
    code, out, _ = run(capsys, "green", "--n", "3", "--relation", "R")
    assert code == 0
    assert "classes: 11 (all singletons)" in out


def test_green_dstar(capsys):
    code, out, _ = run(capsys, "green", "--n", "4", "--relation", "Dstar")
    assert code == 0
    assert "classes: 4" in out


def test_green_definitional_agreement(capsys):
    code, out, _ = run(
        capsys, "green", "--n", "4", "--relation", "Lstar", "--mode", "definitional"
    )
    assert code == 0
    assert "agreement with characterized: True" in out


def test_green_definitional_guard(capsys):
    code, _, err = run(
        capsys, "green", "--n", "6", "--relation", "Lstar", "--mode", "definitional"
    )
    assert code == 3
    assert "characterized" in err


def test_green_definitional_guard_override(capsys):
    code, out, _ = run(
        capsys, "green", "--n", "6", "--relation", "Rstar", "--mode", "definitional",
        "--max-n", "6",
    )
    assert code == 0
    assert "agreement with characterized: True" in out


def test_green_quotient_needs_p(capsys):
    code, _, err = run(capsys, "green", "--n", "4", "--relation", "Lstar",
                       "--target", "quotient")
    assert code == 2
    assert "--p" in err


def test_green_verbose_classes(capsys):
    code, out, _ = run(capsys, "green", "--n", "2", "--relation", "Lstar",
                       "--verbose")
    assert code == 0
    doc = json.loads(out.splitlines()[-1])
    assert doc["relation"] == "Lstar"
    assert sorted(map(sorted, doc["classes"])) == [["-"], ["2:1"], ["2:2"]]


def test_rank_semigroup(capsys):
    code, out, _ = run(capsys, "rank", "--n", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rank"] == doc["formula"] == 8
    assert doc["certified"] is True
    assert doc["status"] == "PASS"


def test_rank_quotient(capsys):
    code, out, _ = run(capsys, "rank", "--target", "quotient", "--n", "5",
                       "--p", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rank"] == 21 and doc["status"] == "PASS"


def test_rank_guard(capsys):
    code, _, err = run(capsys, "rank", "--n", "9")
    assert code == 3
    assert "--max-n" in err


def test_rank_output_is_deterministic(capsys):
    _, out1, _ = run(capsys, "rank", "--n", "4", "--format", "json")
    _, out2, _ = run(capsys, "rank", "--n", "4", "--format", "json")
    assert out1 == out2


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify-all", "--n-max", "4")
    assert code == 0
    assert "0 failed" in out
    assert "FAIL" not in out


def test_verify_all_json(capsys):
    code, out, _ = run(capsys, "verify-all", "--n-max", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out.splitlines()[0])
    assert all(r["status"] in ("PASS", "SKIPPED") for r in doc["rows"])
