import copy
import json

import numpy as np
import pytest

from fusioncheck.catalog import (CATALOG_NAMES, catalog_export, catalog_get, dumps_model,
                                 load_model, model_from_dict, save_model)
from fusioncheck.errors import (FusionCheckError, MissingEntry, MultiplicityUnsupported,
                                ParseError, UnknownModel, ValidationError)
from fusioncheck.fsymbols import check_f_unitarity, check_pentagon
from fusioncheck.fusion_ring import validate_ring


def test_catalog_names():
    assert list(CATALOG_NAMES) == ["trivial", "z2_pointed", "semion", "svec", "z3_pointed",
                             "toric_code", "fibonacci", "yang_lee", "ising"]


def test_unknown_model():
    with pytest.raises(UnknownModel):
        catalog_get("nosuch")


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_models_are_coherent(name):
    m = catalog_get(name)
    assert m.name == name
    assert validate_ring(m.ring) == []
    assert check_pentagon(m.F) < 1e-9


def test_fibonacci_and_yang_lee_shapes():
    fib, yl = catalog_get("fibonacci"), catalog_get("yang_lee")
    assert fib.ring.n == yl.ring.n == 2
    assert check_f_unitarity(fib.F) < 1e-9
    assert check_f_unitarity(yl.F) > 0.1
    assert yl.R is None
    # Yang-Lee ships real F entries
    assert np.all(yl.F.values.imag == 0)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_round_trip_is_exact(name, tmp_path):
    m = catalog_get(name)
    path = tmp_path / f"{name}.json"
    save_model(m, path)
    back = load_model(path)
    assert back.ring.labels == m.ring.labels
    assert np.array_equal(back.ring.N, m.ring.N)
    assert np.array_equal(back.F.values, m.F.values)
    if m.R is None:
        assert back.R is None
    else:
        assert np.array_equal(back.R.values, m.R.values)
        assert np.array_equal(back.twist.values, m.twist.values)
    assert dumps_model(back) == path.read_text(encoding="utf-8")


def fib_doc():
    return copy.deepcopy(catalog_export("fibonacci"))


def test_multiplicity_rejected():
    doc = fib_doc()
    doc["fusion"] = [t for t in doc["fusion"] if t != ["tau", "tau", "tau"]] + [["tau", "tau", "tau", 2]]
    with pytest.raises(MultiplicityUnsupported):
        model_from_dict(doc)


def test_missing_f_entry_is_named():
    doc = fib_doc()
    doc["F"] = [r for r in doc["F"] if not (r["e"] == "1" and r["f"] == "1")]
    with pytest.raises(ValidationError) as info:
        model_from_dict(doc)
    assert isinstance(info.value, MissingEntry)
    assert "(tau,tau,tau,tau,1,1)" in str(info.value)
    assert any("(tau,tau,tau,tau,1,1)" in v for v in info.value.violations)


def test_unit_entries_may_be_omitted():
    doc = fib_doc()
    assert all("1" not in (r["a"], r["b"], r["c"]) for r in doc["F"])
    assert model_from_dict(doc).F[("1", "tau", "tau", "1", "tau", "1")] == 1


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(extra=1),
    lambda d: d.pop("labels"),
    lambda d: d["F"][0].pop("re"),
    lambda d: d.update(fusion=[["tau"]]),
])
def test_parse_errors(mutate):
    doc = fib_doc()
    mutate(doc)
    with pytest.raises(ParseError):
        model_from_dict(doc)


def test_unknown_label_rejected():
    doc = fib_doc()
    doc["F"][0]["a"] = "nosuch"
    with pytest.raises((KeyError, FusionCheckError)):
        model_from_dict(doc)


def test_ring_axiom_violations_listed():
    doc = fib_doc()
    doc["fusion"].append(["tau", "1", "1"])
    with pytest.raises(ValidationError) as info:
        model_from_dict(doc)
    assert info.value.violations


@pytest.mark.parametrize("text", ["{not json", "\xff\xfe"])
def test_load_model_bad_files(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_bytes(text.encode("latin-1"))
    with pytest.raises(ParseError):
        load_model(path)


def test_load_model_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_model(tmp_path / "absent.json")


def test_export_is_json_serializable():
    for name in CATALOG_NAMES:
        json.dumps(catalog_export(name))
