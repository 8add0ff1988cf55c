import json
import subprocess
import sys

import pytest

from fusioncheck.catalog import CATALOG_NAMES, catalog_export
from fusioncheck.cli import main


@pytest.fixture
def export(tmp_path):
    def _export(name, mutate=None):
        doc = catalog_export(name)
        if mutate:
            mutate(doc)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)
    return _export


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    assert capsys.readouterr().out.split() == list(CATALOG_NAMES)


def test_catalog_export_stdout_and_file(capsys, tmp_path):
    assert main(["catalog", "export", "fibonacci"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == catalog_export("fibonacci")
    out = tmp_path / "fib.json"
    assert main(["catalog", "export", "fibonacci", "-o", str(out)]) == 0
    assert json.loads(out.read_text()) == doc


def test_catalog_export_unknown(capsys):
    assert main(["catalog", "export", "nosuch"]) == 3
    assert "nosuch" in capsys.readouterr().err


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_validate_passes_catalog(name, export, capsys):
    assert main(["validate", export(name)]) == 0
    assert "ring axioms: ok" in capsys.readouterr().out


@pytest.mark.parametrize("name, code", [(n, 2 if n == "yang_lee" else 0) for n in CATALOG_NAMES])
def test_report_exit_codes(name, code, export, capsys):
    assert main(["report", export(name)]) == code
    out = capsys.readouterr().out
    assert out.rstrip().endswith(f"exit code: {code}")


def test_braid_json(export, capsys):
    assert main(["braid", export("fibonacci"), "--starts", "16", "--seed", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["starts"] == 16 and doc["seed"] == 3
    assert len(doc["braidings"]) == 2
    assert all(b["unitary"] for b in doc["braidings"])


def test_ribbons_json(export, capsys):
    assert main(["ribbons", export("ising"), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["braidings"]) == 4
    for b in doc["braidings"]:
        assert len(b["ribbon_structures"]) == 2
        assert b["unitary_ribbon"]["sign_character"] == "+++"
        assert "modular" not in b


def test_report_json_contents(export, tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["report", export("fibonacci"), "--json", str(out)]) == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["exit_code"] == 0 and doc["errors"] == []
    assert len(doc["braidings"]) == 2
    for b in doc["braidings"]:
        assert len(b["ribbon_structures"]) == 1
        assert b["unitary_ribbon"] is not None
        assert b["modular"]["verdict"] == "modular"
    assert doc["theorem_checks"] == {"all_braidings_unitary": True,
                                     "unique_unitary_ribbon_per_braiding": True}


def test_report_yang_lee_records_error(export, capsys):
    assert main(["report", export("yang_lee"), "--json", "-"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["braidings"]) == 2
    assert all(len(b["ribbon_structures"]) == 1 for b in doc["braidings"])
    assert {e["error"] for e in doc["errors"]} == {"NoUnitaryRibbon"}


def test_report_is_byte_identical(export, tmp_path, capsys):
    path = export("ising")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["report", path, "--json", str(a), "--seed", "5"]) == 0
    assert main(["report", path, "--json", str(b), "--seed", "5"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_numbers_have_twelve_significant_digits(export, capsys):
    main(["report", export("fibonacci"), "--json", "-"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["ring"]["fp_dimensions"]["tau"] == [1.61803398875, 0.0]


def test_global_tol(export, capsys):
    assert main(["--tol", "1e-6", "report", export("fibonacci"), "--json", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["tolerances"]["eq_tol"] == 1e-6
    assert main(["--tol", "-1", "validate", export("fibonacci")]) == 3


def test_parse_and_io_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert main(["validate", str(bad)]) == 3
    assert main(["validate", str(tmp_path / "absent.json")]) == 3
    assert "error" in capsys.readouterr().err


def test_validation_failures_exit_one(export, capsys):
    def drop_f(doc):
        doc["F"] = doc["F"][1:]
    assert main(["validate", export("fibonacci", drop_f)]) == 1
    assert "missing F entry" in capsys.readouterr().err

    def multiplicity(doc):
        doc["fusion"].append(["tau", "tau", "tau", 2])
    assert main(["validate", export("fibonacci", multiplicity)]) == 1


def test_broken_pentagon_exit_one(export, capsys):
    def scale(doc):
        for r in doc["F"]:
            if (r["e"], r["f"]) == ("tau", "tau"):
                r["re"] = -r["re"] * 1.5
    assert main(["report", export("fibonacci", scale), "--json", "-"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["pentagon_residual"] > 1e-3
    assert "braidings" not in doc


def test_broken_shipped_braiding_exit_one(export, capsys):
    def corrupt(doc):
        doc["R"][0]["re"], doc["R"][0]["im"] = 1.0, 0.0
    assert main(["report", export("fibonacci", corrupt)]) == 1
    assert "shipped R fails the hexagons" in capsys.readouterr().out


def test_module_entry_point(export):
    proc = subprocess.run([sys.executable, "-m", "fusioncheck", "validate", export("semion")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "pentagon residual" in proc.stdout
