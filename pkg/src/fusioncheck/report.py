"""End-to-end verification pipeline and its report.

Stage errors are recorded in the report rather than raised, so a failing
stage never hides the results of the stages before it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import errors
from .braiding import RSymbolTable, check_braiding_unitarity, check_hexagons, solve_braidings
from .catalog import Model
from .fsymbols import check_f_unitarity, check_pentagon
from .fusion_ring import fp_dimensions, validate_ring
from .modular import modular_data
from .numerics import DEFAULT_TOL, Tolerance
from .ribbon import (RibbonStructure, canonical_twist, check_balancing, check_ribbon_condition,
                     enumerate_ribbon_structures, select_unitary_ribbon)

EXIT_OK = 0
EXIT_COHERENCE = 1
EXIT_NO_UNITARY_RIBBON = 2
EXIT_IO = 3
EXIT_THEOREM_VIOLATION = 4


def num(x: float) -> float:
    """Round to 12 significant digits (and turn -0.0 into 0.0)."""
    x = float(x)
    if not np.isfinite(x):
        return x
    return float(f"{x:.12g}") + 0.0


def cnum(z: complex) -> list:
    return [num(z.real), num(z.imag)]


@dataclass
class Report:
    data: dict
    errors: list = field(default_factory=list)
    outcome: set = field(default_factory=set)

    @property
    def exit_code(self) -> int:
        for code in (EXIT_THEOREM_VIOLATION, EXIT_COHERENCE, EXIT_NO_UNITARY_RIBBON):
            if code in self.outcome:
                return code
        return EXIT_OK

    def to_dict(self) -> dict:
        return dict(self.data, errors=self.errors, exit_code=self.exit_code)

    def to_json(self) -> str:
        text = json.dumps(self.to_dict(), indent=2, ensure_ascii=False)
        return text.replace("Infinity", '"inf"') + "\n"

    def to_text(self) -> str:
        return render_text(self.to_dict())


class _Recorder:
    def __init__(self, report: Report):
        self.report = report

    def fail(self, stage: str, exc: Exception, code: int):
        self.report.errors.append({"stage": stage, "error": type(exc).__name__, "message": str(exc)})
        self.report.outcome.add(code)


def _labelled(ring, values) -> dict:
    return {ring.name(a): cnum(v) for a, v in enumerate(values)}


def _ribbon_dict(ring, rib: RibbonStructure) -> dict:
    return {"sign_character": rib.gamma.label,
            "twist": _labelled(ring, rib.twist.values),
            "dims": _labelled(ring, rib.dims)}


def _braiding_section(model: Model, R: RSymbolTable, f_unitary: bool, tol: Tolerance,
                      rec: _Recorder, stage: str, seed_twist=None) -> dict:
    ring, F = model.ring, model.F
    nm = ring.name
    hex_res = check_hexagons(F, R)
    unit_dev = check_braiding_unitarity(R)
    out = {
        "R": {f"{nm(a)},{nm(b)},{nm(c)}": cnum(v) for (a, b, c), v in R.items()},
        "hexagon_residual": num(hex_res),
        "unitarity_deviation": num(unit_dev),
        "unitary": bool(unit_dev <= tol.eq_tol),
    }
    if hex_res > tol.eq_tol:
        rec.fail(stage, errors.ValidationError(f"hexagon residual {hex_res:.3g} exceeds tolerance"),
                 EXIT_COHERENCE)
        return out
    if f_unitary and unit_dev > 1e-6:
        rec.fail(stage, errors.TheoremViolation(
            f"braiding of a unitary fusion category has non-unimodular entry (deviation {unit_dev:.3g})"),
            EXIT_THEOREM_VIOLATION)
    try:
        if seed_twist is None:
            seed_twist = canonical_twist(F, R, tol)
        else:
            bal = check_balancing(ring, R, seed_twist)
            rib = check_ribbon_condition(ring, seed_twist)
            out["shipped_twist_residuals"] = {"balancing": num(bal), "ribbon": num(rib)}
        out["seed_twist"] = _labelled(ring, seed_twist.values)
        structures = enumerate_ribbon_structures(F, R, seed_twist, tol)
    except errors.FusionCheckError as exc:
        rec.fail(stage + ".ribbon", exc, EXIT_COHERENCE)
        return out
    out["ribbon_structures"] = [_ribbon_dict(ring, s) for s in structures]
    try:
        chosen = select_unitary_ribbon(structures, f_unitary, tol)
    except errors.TheoremViolation as exc:
        rec.fail(stage + ".unitary_ribbon", exc, EXIT_THEOREM_VIOLATION)
        chosen = None
    except errors.NoUnitaryRibbon as exc:
        rec.fail(stage + ".unitary_ribbon", exc, EXIT_NO_UNITARY_RIBBON)
        chosen = None
    except errors.DegenerateDimension as exc:
        rec.fail(stage + ".unitary_ribbon", exc, EXIT_COHERENCE)
        chosen = None
    out["unitary_ribbon"] = None if chosen is None else _ribbon_dict(ring, chosen)
    rib = chosen if chosen is not None else structures[0]
    md = modular_data(ring, rib, tol)
    out["modular"] = {
        "ribbon": rib.gamma.label,
        "s_tilde": [[cnum(z) for z in row] for row in md.s_tilde],
        "t": [cnum(z) for z in np.diag(md.t)],
        "total_dim_sq": num(md.total_dim_sq),
        "verdict": md.verdict,
    }
    return out


def run_report(model: Model, starts: int = 64, seed: int = 0, tol: Tolerance = DEFAULT_TOL,
               stages: str = "report") -> Report:
    """Run validate -> pentagon -> F-unitarity -> braidings -> ribbons -> modular data.

    ``stages`` truncates the pipeline: ``"validate"``, ``"braid"``,
    ``"ribbons"`` or the full ``"report"``.
    """
    ring, F = model.ring, model.F
    report = Report({
        "model": model.name,
        "tolerances": {"eq_tol": tol.eq_tol, "dedup_tol": tol.dedup_tol, "solver_tol": tol.solver_tol},
        "starts": starts,
        "seed": seed,
        "labels": list(ring.labels),
    })
    rec = _Recorder(report)
    data = report.data

    violations = validate_ring(ring)
    data["ring"] = {"valid": not violations, "violations": violations,
                    "fp_dimensions": _labelled(ring, fp_dimensions(ring)) if not violations else None}
    if violations:
        rec.fail("validate", errors.ValidationError("ring axioms violated", violations), EXIT_COHERENCE)
        return report
    pent = check_pentagon(F)
    data["pentagon_residual"] = num(pent)
    if pent > tol.eq_tol:
        rec.fail("pentagon", errors.ValidationError(f"pentagon residual {pent:.3g} exceeds tolerance"),
                 EXIT_COHERENCE)
    f_dev = check_f_unitarity(F)
    f_unitary = f_dev <= tol.eq_tol
    data["f_unitarity"] = {"deviation": num(f_dev), "unitary": bool(f_unitary)}
    if model.R is not None:
        hex_res = check_hexagons(F, model.R)
        data["shipped_hexagon_residual"] = num(hex_res)
        if hex_res > tol.eq_tol:
            rec.fail("shipped_braiding", errors.ValidationError(
                f"shipped R fails the hexagons (residual {hex_res:.3g})"), EXIT_COHERENCE)
    if stages == "validate" or pent > tol.eq_tol:
        return report

    braidings = solve_braidings(F, starts, seed, tol)
    if not braidings:
        rec.fail("braid", errors.FusionCheckError("no braiding found"), EXIT_COHERENCE)
    if stages == "braid":
        data["braidings"] = []
        for R in braidings:
            dev = check_braiding_unitarity(R)
            data["braidings"].append({
                "R": {",".join(ring.name(i) for i in t): cnum(v) for t, v in R.items()},
                "hexagon_residual": num(check_hexagons(F, R)),
                "unitarity_deviation": num(dev),
                "unitary": bool(dev <= tol.eq_tol),
            })
            if f_unitary and dev > 1e-6:
                rec.fail("braid", errors.TheoremViolation("non-unimodular braiding on unitary F-data"),
                         EXIT_THEOREM_VIOLATION)
        return report

    data["braidings"] = [
        _braiding_section(model, R, f_unitary, tol, rec, f"braiding[{i}]")
        for i, R in enumerate(braidings)
    ]
    if model.R is not None and check_hexagons(F, model.R) <= tol.eq_tol:
        data["shipped_braiding"] = _braiding_section(model, model.R, f_unitary, tol, rec,
                                                     "shipped_braiding", model.twist)
    if stages == "ribbons":
        for section in data["braidings"] + [data.get("shipped_braiding") or {}]:
            section.pop("modular", None)
    data["theorem_checks"] = {
        "all_braidings_unitary": all(b["unitarity_deviation"] <= 1e-6 for b in data["braidings"]),
        "unique_unitary_ribbon_per_braiding": all(b.get("unitary_ribbon") is not None
                                                  for b in data["braidings"]),
    }
    return report


def render_text(doc: dict) -> str:
    lines = [f"model: {doc['model']}  (labels: {', '.join(doc['labels'])})"]
    ring = doc.get("ring", {})
    lines.append(f"ring axioms: {'ok' if ring.get('valid') else 'VIOLATED'}")
    for v in ring.get("violations", []):
        lines.append(f"  - {v}")
    if ring.get("fp_dimensions"):
        lines.append("FP dimensions: " + ", ".join(f"{k}={v[0]:.12g}" for k, v in ring["fp_dimensions"].items()))
    if "pentagon_residual" in doc:
        lines.append(f"pentagon residual: {doc['pentagon_residual']:.3g}")
    if "f_unitarity" in doc:
        fu = doc["f_unitarity"]
        lines.append(f"F-unitarity deviation: {fu['deviation']:.3g} ({'unitary' if fu['unitary'] else 'not unitary'})")
    if "shipped_hexagon_residual" in doc:
        lines.append(f"shipped R hexagon residual: {doc['shipped_hexagon_residual']:.3g}")
    sections = [(f"braiding {i}", b) for i, b in enumerate(doc.get("braidings", []))]
    if doc.get("shipped_braiding"):
        sections.append(("shipped braiding", doc["shipped_braiding"]))
    if "braidings" in doc:
        lines.append(f"braidings found: {len(doc['braidings'])}")
    for title, b in sections:
        lines.append(f"{title}: hexagon {b['hexagon_residual']:.3g}, "
                     f"unitarity deviation {b['unitarity_deviation']:.3g}")
        lines.append("  R: " + "  ".join(f"{k}={_fmt(v)}" for k, v in b["R"].items()))
        for s in b.get("ribbon_structures", []):
            lines.append(f"  ribbon [{s['sign_character']}]: theta "
                         + " ".join(f"{k}={_fmt(v)}" for k, v in s["twist"].items())
                         + " | dims " + " ".join(f"{k}={_fmt(v)}" for k, v in s["dims"].items()))
        if "unitary_ribbon" in b:
            u = b["unitary_ribbon"]
            lines.append(f"  unitary ribbon: {u['sign_character'] if u else 'none'}")
        if "modular" in b:
            lines.append(f"  modularity: {b['modular']['verdict']} (total dim^2 {b['modular']['total_dim_sq']:.12g})")
    for e in doc.get("errors", []):
        lines.append(f"error [{e['stage']}] {e['error']}: {e['message']}")
    lines.append(f"exit code: {doc['exit_code']}")
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    re, im = v
    if abs(im) <= 1e-12 * max(1.0, abs(re)):
        return f"{re:.6g}"
    return f"{re:.6g}{im:+.6g}i"
