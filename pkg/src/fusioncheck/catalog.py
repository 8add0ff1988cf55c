"""Model file format and the embedded catalog of small anyon models.

A model file is UTF-8 JSON::

    {"name": "fibonacci",
     "labels": ["1", "tau"],
     "dual": {"1": "1", "tau": "tau"},
     "fusion": [["1", "1", "1"], ["tau", "tau", "1"], ...],
     "F": [{"a": "tau", "b": "tau", "c": "tau", "d": "tau", "e": "1", "f": "1",
            "re": 0.618..., "im": 0.0}, ...],
     "R": [{"a": "tau", "b": "tau", "c": "1", "re": ..., "im": ...}, ...],
     "twist": {"tau": [re, im]}}

``R`` and ``twist`` are optional.  F and R records with a unit among their
first indices may be omitted (they are 1).  A fourth element on a fusion
triple is a multiplicity; only 1 is accepted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .braiding import RSymbolTable
from .errors import (MultiplicityUnsupported, ParseError,
                     UnknownLabel, UnknownModel, ValidationError)
from .fsymbols import FSymbolTable, f_validation_problems
from .fusion_ring import FusionRing, validate_ring
from .numerics import DEFAULT_TOL, Tolerance
from .ribbon import Twist

_FIELDS = {"name", "labels", "dual", "fusion", "F", "R", "twist"}


@dataclass(frozen=True, eq=False)
class Model:
    name: str
    ring: FusionRing
    F: FSymbolTable
    R: Optional[RSymbolTable] = None
    twist: Optional[Twist] = None


# -- (de)serialization ----------------------------------------------------

def model_from_dict(doc: dict, tol: Tolerance = DEFAULT_TOL) -> Model:
    """Validate a parsed model document; every violation found is reported together."""
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object")
    unknown = set(doc) - _FIELDS
    missing = {"name", "labels", "dual", "fusion"} - set(doc)
    if unknown or missing:
        raise ParseError(f"bad model fields: unknown {sorted(unknown)}, missing {sorted(missing)}")
    try:
        ring = FusionRing.from_rules(doc["labels"], doc["dual"], doc["fusion"])
    except (MultiplicityUnsupported, UnknownLabel):
        raise
    except (TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed ring data: {exc}") from exc
    problems = validate_ring(ring)
    if problems:
        raise ValidationError(f"{len(problems)} ring axiom violation(s)", problems)

    def label_tuple(rec, keys):
        return tuple(rec[k] for k in keys)

    try:
        f_entries = {label_tuple(r, "abcdef"): complex(r["re"], r["im"]) for r in doc.get("F", [])}
        r_entries = None
        if doc.get("R") is not None:
            r_entries = {label_tuple(r, "abc"): complex(r["re"], r["im"]) for r in doc["R"]}
        tw = doc.get("twist")
        tw_entries = None if tw is None else {k: complex(v[0], v[1]) for k, v in tw.items()}
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed F/R/twist record: {exc}") from exc

    F = FSymbolTable.from_entries(ring, f_entries)
    problems = f_validation_problems(F, tol)
    R = None if r_entries is None else RSymbolTable.from_entries(ring, r_entries)
    twist = None if tw_entries is None else Twist.from_entries(ring, tw_entries)
    if problems:
        raise ValidationError(f"{len(problems)} F-symbol violation(s)", problems)
    return Model(str(doc["name"]), ring, F, R, twist)


def _num(z: complex):
    return {"re": float(z.real), "im": float(z.imag)}


def model_to_dict(model: Model) -> dict:
    """Canonical document: label order kept, unit-indexed F/R entries omitted."""
    ring = model.ring
    nm = ring.name
    doc = {
        "name": model.name,
        "labels": list(ring.labels),
        "dual": {nm(a): nm(ring.dual[a]) for a in range(ring.n)},
        "fusion": [[nm(a), nm(b), nm(c)] for a, b, c in ring.triples],
        "F": [dict(zip("abcdef", map(nm, t)), **_num(v))
              for t, v in model.F.items() if 0 not in t[:3]],
    }
    if model.R is not None:
        doc["R"] = [dict(zip("abc", map(nm, t)), **_num(v)) for t, v in model.R.items() if 0 not in t[:2]]
    if model.twist is not None:
        doc["twist"] = {nm(a): [float(z.real), float(z.imag)] for a, z in enumerate(model.twist.values)}
    return doc


def dumps_model(model: Model) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def load_model(path, tol: Tolerance = DEFAULT_TOL) -> Model:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read model {path}: {exc}") from exc
    return model_from_dict(doc, tol)


def save_model(model: Model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))


# -- the embedded catalog -------------------------------------------------

PHI = (1 + np.sqrt(5)) / 2


def _with_units(labels, rules):
    unit = labels[0]
    out = {(unit, x, x) for x in labels} | {(x, unit, x) for x in labels}
    out |= {tuple(r) for r in rules}
    order = {x: i for i, x in enumerate(labels)}
    return sorted(out, key=lambda t: tuple(order[x] for x in t))


def _group_model(name, labels, elements, mul, inverse, omega=None, braid=None):
    """Pointed model from a finite abelian group, optional 3-cocycle and braiding."""
    lab = dict(zip(elements, labels))
    rules = [(lab[x], lab[y], lab[mul(x, y)]) for x in elements for y in elements]
    ring = FusionRing.from_rules(labels, {lab[x]: lab[inverse(x)] for x in elements}, rules)
    omega = omega or (lambda x, y, z: 1.0)
    F = {}
    for x in elements:
        for y in elements:
            for z in elements:
                xy, yz = mul(x, y), mul(y, z)
                F[(lab[x], lab[y], lab[z], lab[mul(xy, z)], lab[xy], lab[yz])] = omega(x, y, z)
    F = {k: v for k, v in F.items() if ring.index(k[0]) and ring.index(k[1]) and ring.index(k[2])}
    R = None
    twist = None
    if braid is not None:
        R = RSymbolTable.from_entries(
            ring, {(lab[x], lab[y], lab[mul(x, y)]): braid(x, y) for x in elements for y in elements})
    model_F = FSymbolTable.from_entries(ring, F)
    if R is not None:
        twist = Twist.from_entries(ring, {lab[x]: braid(x, x) for x in elements})
    return Model(name, ring, model_F, R, twist)


def _trivial():
    ring = FusionRing.from_rules(["1"], {"1": "1"}, [("1", "1", "1")])
    return Model("trivial", ring, FSymbolTable.from_entries(ring, {}),
                 RSymbolTable.from_entries(ring, {}), Twist.from_entries(ring, {}))


def _z2(name, omega, braid):
    return _group_model(name, ["1", "s"], [0, 1], lambda x, y: (x + y) % 2, lambda x: x,
                        omega=omega, braid=braid)


def _z3():
    w = np.exp(2j * np.pi / 3)
    return _group_model("z3_pointed", ["1", "a", "a2"], [0, 1, 2], lambda x, y: (x + y) % 3,
                        lambda x: (-x) % 3, braid=lambda x, y: w ** (x * y))


def _toric_code():
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return _group_model("toric_code", ["1", "e", "m", "f"], elements,
                        lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), lambda x: x,
                        braid=lambda x, y: (-1.0) ** (x[1] * y[0]))


def _golden(name, F_block, R=None, twist=None):
    ring = FusionRing.from_rules(["1", "tau"], {"1": "1", "tau": "tau"},
                                 _with_units(["1", "tau"], [("tau", "tau", "1"), ("tau", "tau", "tau")]))
    t = "tau"
    F = {(t, t, t, t, e, f): F_block[i][j] for i, e in enumerate(["1", t]) for j, f in enumerate(["1", t])}
    F[(t, t, t, "1", t, t)] = 1.0
    return Model(name, ring, FSymbolTable.from_entries(ring, F),
                 None if R is None else RSymbolTable.from_entries(ring, R),
                 None if twist is None else Twist.from_entries(ring, twist))


def _fibonacci():
    F = [[1 / PHI, PHI ** -0.5], [PHI ** -0.5, -1 / PHI]]
    R = {("tau", "tau", "1"): np.exp(-4j * np.pi / 5), ("tau", "tau", "tau"): np.exp(3j * np.pi / 5)}
    return _golden("fibonacci", F, R, {"tau": np.exp(4j * np.pi / 5)})


def _yang_lee():
    d = (1 - np.sqrt(5)) / 2
    # real gauge: off-diagonal product fixed at 1 - 1/d^2 = -phi
    return _golden("yang_lee", [[1 / d, 1.0], [-PHI, -1 / d]])


def _ising():
    labels = ["1", "psi", "sigma"]
    rules = _with_units(labels, [("psi", "psi", "1"), ("psi", "sigma", "sigma"), ("sigma", "psi", "sigma"),
                                 ("sigma", "sigma", "1"), ("sigma", "sigma", "psi")])
    ring = FusionRing.from_rules(labels, {x: x for x in labels}, rules)
    s = 1 / np.sqrt(2)
    F = {
        ("sigma", "sigma", "sigma", "sigma", "1", "1"): s,
        ("sigma", "sigma", "sigma", "sigma", "1", "psi"): s,
        ("sigma", "sigma", "sigma", "sigma", "psi", "1"): s,
        ("sigma", "sigma", "sigma", "sigma", "psi", "psi"): -s,
        ("sigma", "psi", "sigma", "psi", "sigma", "sigma"): -1.0,
        ("psi", "sigma", "psi", "sigma", "sigma", "sigma"): -1.0,
    }
    for key in list(ring.sextuples):
        names = tuple(ring.name(i) for i in key)
        if 0 not in key[:3] and names not in F:
            F[names] = 1.0
    R = {
        ("psi", "psi", "1"): -1.0,
        ("psi", "sigma", "sigma"): -1j,
        ("sigma", "psi", "sigma"): -1j,
        ("sigma", "sigma", "1"): np.exp(-1j * np.pi / 8),
        ("sigma", "sigma", "psi"): np.exp(3j * np.pi / 8),
    }
    twist = {"psi": -1.0, "sigma": np.exp(1j * np.pi / 8)}
    return Model("ising", ring, FSymbolTable.from_entries(ring, F),
                 RSymbolTable.from_entries(ring, R), Twist.from_entries(ring, twist))


_BUILDERS = {
    "trivial": _trivial,
    "z2_pointed": lambda: _z2("z2_pointed", None, lambda x, y: 1.0),
    "semion": lambda: _z2("semion", lambda x, y, z: -1.0 if x and y and z else 1.0,
                          lambda x, y: 1j if x and y else 1.0),
    "svec": lambda: _z2("svec", None, lambda x, y: -1.0 if x and y else 1.0),
    "z3_pointed": _z3,
    "toric_code": _toric_code,
    "fibonacci": _fibonacci,
    "yang_lee": _yang_lee,
    "ising": _ising,
}

CATALOG_NAMES = tuple(_BUILDERS)
_cache: dict = {}


def catalog_get(name: str) -> Model:
    if name not in _BUILDERS:
        raise UnknownModel(f"unknown catalog model {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if name not in _cache:
        _cache[name] = _BUILDERS[name]()
    return _cache[name]


def catalog_export(name: str) -> dict:
    return model_to_dict(catalog_get(name))
