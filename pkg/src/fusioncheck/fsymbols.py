"""F-symbols: storage, pentagon coherence, unitarity and gauge transformations.

Index convention: ``[F^{abc}_d]_{e,f}`` maps the basis ``(a b -> e) (e c -> d)``
to ``(b c -> f) (a f -> d)``; the 6-tuple ``(a,b,c,d,e,f)`` is admissible
when all four vertices are allowed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .errors import InadmissibleTriple, MissingEntry, MissingGaugeEntry, ValidationError
from .fusion_ring import FusionRing
from .numerics import DEFAULT_TOL, Tolerance


def _is_unit_sextuple(t) -> bool:
    return t[0] == 0 or t[1] == 0 or t[2] == 0


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FSymbolTable:
    ring: FusionRing
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        if values.shape != (len(self.ring.sextuples),):
            raise ValueError("F values must align with the ring's admissible 6-tuples")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_entries(cls, ring: FusionRing, entries: Mapping) -> "FSymbolTable":
        """Build a table from ``{(a,b,c,d,e,f): value}``; unit-indexed entries default to 1."""
        values = np.ones(len(ring.sextuples), dtype=np.complex128)
        seen = set()
        inadmissible = []
        for key, value in entries.items():
            t = tuple(ring.index(x) for x in key)
            pos = ring.sextuple_pos.get(t)
            if pos is None:
                inadmissible.append(key)
                continue
            values[pos] = complex(value)
            seen.add(t)
        if inadmissible:
            raise ValidationError("inadmissible F entries: " + ", ".join(map(str, inadmissible)),
                                  [f"inadmissible F entry {k}" for k in inadmissible])
        missing = [t for t in ring.sextuples if t not in seen and not _is_unit_sextuple(t)]
        if missing:
            names = ["(" + ",".join(ring.name(i) for i in t) + ")" for t in missing]
            raise MissingEntry("missing F entries: " + ", ".join(names),
                               [f"missing F entry {t}" for t in names])
        return cls(ring, values)

    @classmethod
    def trivial(cls, ring: FusionRing) -> "FSymbolTable":
        """All-ones table (the associator of a pointed ring with trivial 3-cocycle)."""
        return cls(ring, np.ones(len(ring.sextuples)))

    def __getitem__(self, key) -> complex:
        t = tuple(self.ring.index(x) for x in key)
        pos = self.ring.sextuple_pos.get(t)
        if pos is None:
            raise InadmissibleTriple(f"F index {key} is not admissible")
        return complex(self.values[pos])

    def matrix(self, a, b, c, d):
        """``(rows, cols, [F^{abc}_d])`` with rows indexed by e and columns by f."""
        key = tuple(self.ring.index(x) for x in (a, b, c, d))
        for k, rows, cols, pos in self.ring.f_blocks:
            if k == key:
                return rows, cols, self.values[pos]
        return (), (), np.zeros((0, 0), dtype=np.complex128)

    def items(self):
        for t, v in zip(self.ring.sextuples, self.values):
            yield t, complex(v)


@dataclass(frozen=True, eq=False)
class GaugeTransformation:
    """Rescaling of every fusion vertex ``(a b -> c)``, aligned with ``ring.triples``."""

    ring: FusionRing
    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values)
        if values.shape != (len(self.ring.triples),):
            raise MissingGaugeEntry("gauge must be defined on every admissible triple")
        if np.any(values == 0):
            raise ValueError("gauge entries must be nonzero")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_entries(cls, ring: FusionRing, entries: Mapping) -> "GaugeTransformation":
        values = np.ones(len(ring.triples), dtype=np.complex128)
        seen = set()
        for key, value in entries.items():
            t = tuple(ring.index(x) for x in key)
            if t not in ring.triple_pos:
                raise InadmissibleTriple(f"gauge index {key} is not admissible")
            values[ring.triple_pos[t]] = complex(value)
            seen.add(t)
        missing = [t for t in ring.triples if t not in seen and t[0] != 0 and t[1] != 0]
        if missing:
            raise MissingGaugeEntry(f"gauge has no entry for {missing}")
        return cls(ring, values)

    @classmethod
    def identity(cls, ring: FusionRing) -> "GaugeTransformation":
        return cls(ring, np.ones(len(ring.triples)))

    @classmethod
    def random(cls, ring: FusionRing, rng: np.random.Generator, unimodular: bool = False):
        """Random gauge, trivial on unit vertices (keeps unit triviality exact)."""
        k = len(ring.triples)
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi, k))
        mag = np.ones(k) if unimodular else np.exp(rng.uniform(-1.0, 1.0, k))
        g = mag * phase
        for i, (a, b, _) in enumerate(ring.triples):
            if a == 0 or b == 0:
                g[i] = 1.0
        return cls(ring, g)

    def inverse(self) -> "GaugeTransformation":
        return GaugeTransformation(self.ring, 1.0 / self.values)


@lru_cache(maxsize=None)
def _gauge_f_index(ring: FusionRing):
    tp = ring.triple_pos
    cols = [[tp[(a, b, e)], tp[(e, c, d)], tp[(b, c, f)], tp[(a, f, d)]]
            for a, b, c, d, e, f in ring.sextuples]
    return np.array(cols, dtype=np.intp).reshape(-1, 4)


@lru_cache(maxsize=None)
def _unit_mask(ring: FusionRing):
    return np.array([_is_unit_sextuple(t) for t in ring.sextuples], dtype=bool)


def check_pentagon(F: FSymbolTable) -> float:
    """Largest absolute deviation over all pentagon instances."""
    values = np.concatenate([F.values, [1.0, 0.0]])
    dev = F.ring.pentagon_system.max_deviation(values)
    return float("inf") if np.isnan(dev) else dev


def check_f_unitarity(F: FSymbolTable) -> float:
    """``max ||F F^dagger - I||_max`` over all F-matrices."""
    worst = 0.0
    for _, _, _, pos in F.ring.f_blocks:
        M = F.values[pos]
        worst = max(worst, float(np.max(np.abs(M @ M.conj().T - np.eye(len(M))))))
    return worst


def is_unitary_gauge(F: FSymbolTable, tol: Tolerance = DEFAULT_TOL) -> bool:
    return check_f_unitarity(F) <= tol.eq_tol


def f_invertibility_violations(F: FSymbolTable, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    out = []
    for key, rows, cols, pos in F.ring.f_blocks:
        M = F.values[pos]
        if M.shape[0] != M.shape[1] or np.linalg.cond(M) * tol.eq_tol > 1.0:
            names = ",".join(F.ring.name(i) for i in key)
            out.append(f"F-matrix ({names}) is not invertible")
    return out


def apply_gauge_f(F: FSymbolTable, g: GaugeTransformation) -> FSymbolTable:
    """``[F'^{abc}_d]_{e,f} = g^{ab}_e g^{ec}_d / (g^{bc}_f g^{af}_d) [F^{abc}_d]_{e,f}``."""
    if g.ring is not F.ring:
        raise MissingGaugeEntry("gauge and F-symbols live on different rings")
    idx = _gauge_f_index(F.ring)
    gv = g.values
    factor = (gv[idx[:, 0]] * gv[idx[:, 1]]) / (gv[idx[:, 2]] * gv[idx[:, 3]])
    factor[_unit_mask(F.ring)] = 1.0  # exact: the four factors cancel pairwise
    return FSymbolTable(F.ring, factor * F.values)


def f_validation_problems(F: FSymbolTable, tol: Tolerance = DEFAULT_TOL) -> list[str]:
    """Well-formedness: finite entries, unit triviality, invertible blocks."""
    problems = []
    if not np.all(np.isfinite(F.values)):
        problems.append("F table contains non-finite entries")
    for t, v in F.items():
        if _is_unit_sextuple(t) and v != 1:
            problems.append(f"unit-indexed F entry {tuple(F.ring.name(i) for i in t)} must be 1, got {v}")
    problems.extend(f_invertibility_violations(F, tol))
    return problems

