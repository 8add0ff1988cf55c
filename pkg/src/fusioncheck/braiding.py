"""R-symbols: hexagon coherence, braiding enumeration, unitarity and gauge action."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .errors import InadmissibleTriple, MissingEntry, MissingGaugeEntry, ValidationError
from .fsymbols import FSymbolTable, GaugeTransformation
from .fusion_ring import FusionRing
from .numerics import DEFAULT_TOL, Tolerance, dedup_sorted, multistart_root_solve

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RSymbolTable:
    """``R^{ab}_c`` for every admissible triple, aligned with ``ring.triples``."""

    ring: FusionRing
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != (len(self.ring.triples),):
            raise ValueError("R values must align with the ring's admissible triples")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_entries(cls, ring: FusionRing, entries: Mapping) -> "RSymbolTable":
        """Build from ``{(a,b,c): value}``; unit-indexed entries default to 1."""
        values = np.ones(len(ring.triples), dtype=np.complex128)
        seen = set()
        problems = []
        for key, value in entries.items():
            t = tuple(ring.index(x) for x in key)
            pos = ring.triple_pos.get(t)
            if pos is None:
                problems.append(f"inadmissible R entry {key}")
                continue
            if value == 0:
                problems.append(f"R entry {key} is zero")
            values[pos] = complex(value)
            seen.add(t)
        if problems:
            raise ValidationError("; ".join(problems), problems)
        missing = [t for t in ring.triples if t not in seen and t[0] != 0 and t[1] != 0]
        if missing:
            names = ["(" + ",".join(ring.name(i) for i in t) + ")" for t in missing]
            raise MissingEntry("missing R entries: " + ", ".join(names),
                               [f"missing R entry {t}" for t in names])
        return cls(ring, values)

    def __getitem__(self, key) -> complex:
        t = tuple(self.ring.index(x) for x in key)
        pos = self.ring.triple_pos.get(t)
        if pos is None:
            raise InadmissibleTriple(f"R index {key} is not admissible")
        return complex(self.values[pos])

    def items(self):
        for t, v in zip(self.ring.triples, self.values):
            yield t, complex(v)

    def reverse(self) -> "RSymbolTable":
        """The reverse braiding ``R^{ab}_c -> 1 / R^{ba}_c``."""
        return RSymbolTable(self.ring, _reverse_values(self.ring, self.values))


def _reverse_values(ring: FusionRing, values: np.ndarray) -> np.ndarray:
    rev = ring.reverse_triple_pos
    out = np.full(len(values), np.nan, dtype=np.complex128)
    ok = rev >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out[ok] = 1.0 / values[rev[ok]]
    return out


def _hexagon_values(F: FSymbolTable, r_values: np.ndarray) -> np.ndarray:
    return np.concatenate([F.values, r_values, _reverse_values(F.ring, r_values), [1.0, 0.0]])


def hexagon_deviations(F: FSymbolTable, r_values) -> np.ndarray:
    """Complex deviation of every hexagon instance (both families)."""
    return F.ring.hexagon_system.deviations(_hexagon_values(F, np.asarray(r_values, dtype=np.complex128)))


def check_hexagons(F: FSymbolTable, R: RSymbolTable) -> float:
    if R.ring is not F.ring:
        raise ValueError("F and R live on different rings")
    dev = F.ring.hexagon_system.max_deviation(_hexagon_values(F, R.values))
    return float("inf") if np.isnan(dev) else dev


def _unknown_positions(ring: FusionRing) -> np.ndarray:
    return np.array([i for i, (a, b, _) in enumerate(ring.triples) if a != 0 and b != 0], dtype=np.intp)


def solve_braidings(F: FSymbolTable, starts: int = 64, seed: int = 0,
                    tol: Tolerance = DEFAULT_TOL) -> list[RSymbolTable]:
    """Enumerate braidings compatible with ``F``.

    Pointed rings use an exhaustive search over roots of unity of order
    ``2n``; otherwise (or if that search finds nothing) a seeded multistart
    least-squares descent runs on the hexagon residual.  Completeness is not
    guaranteed; every returned table satisfies the hexagons to ``solver_tol``.
    """
    ring = F.ring
    if ring.is_pointed:
        found = _grid_braidings(F, tol)
        if found:
            return found
        log.info("root-of-unity grid found no braiding; falling back to descent")
    unknown = _unknown_positions(ring)
    base = np.ones(len(ring.triples), dtype=np.complex128)
    system = ring.hexagon_system

    def residual(z):
        r = base.copy()
        r[unknown] = z
        dev = system.deviations(_hexagon_values(F, r))
        return np.concatenate([dev.real, dev.imag])

    roots = multistart_root_solve(residual, len(unknown), starts, seed, tol)
    out = []
    for z in roots:
        r = base.copy()
        r[unknown] = z
        table = RSymbolTable(ring, r)
        if check_hexagons(F, table) <= tol.solver_tol:
            out.append(table)
    return out


@lru_cache(maxsize=None)
def _grid_plan(ring: FusionRing):
    """Order in which hexagon instances become decidable during the grid search."""
    system = ring.hexagon_system
    nf, nr = len(ring.sextuples), len(ring.triples)
    rev = ring.reverse_triple_pos
    unknown = list(_unknown_positions(ring))
    order = {pos: k for k, pos in enumerate(unknown)}

    def r_of(slot):
        if nf <= slot < nf + nr:
            return slot - nf
        if nf + nr <= slot < nf + 2 * nr:
            return int(rev[slot - nf - nr])
        return None

    checks = [[] for _ in range(len(unknown) + 1)]
    for i in range(len(system)):
        slots = list(system.lhs[i])
        for t in range(system.rhs_ptr[i], system.rhs_ptr[i + 1]):
            slots.extend(system.rhs[t])
        depth = 0
        for s in slots:
            r = r_of(s)
            if r is not None and r in order:
                depth = max(depth, order[r] + 1)
        checks[depth].append(i)
    return unknown, checks


def _grid_braidings(F: FSymbolTable, tol: Tolerance) -> list[RSymbolTable]:
    ring = F.ring
    system = ring.hexagon_system
    unknown, checks = _grid_plan(ring)
    n_roots = 2 * ring.n
    roots = np.exp(2j * np.pi * np.arange(n_roots) / n_roots)
    nf, nr = len(ring.sextuples), len(ring.triples)
    values = _hexagon_values(F, np.ones(nr, dtype=np.complex128))
    rev = ring.reverse_triple_pos
    lhs, ptr, rhs = system.lhs.tolist(), system.rhs_ptr.tolist(), system.rhs.tolist()

    def ok(instances):
        v = values
        for i in instances:
            p, q, r = lhs[i]
            acc = v[p] * v[q] * v[r]
            for t in range(ptr[i], ptr[i + 1]):
                x, y, z = rhs[t]
                acc -= v[x] * v[y] * v[z]
            if not abs(acc) <= tol.eq_tol:
                return False
        return True

    def assign(pos, value):
        values[nf + pos] = value
        j = rev[pos]  # the reverse of a triple's reverse is itself
        if j >= 0:
            values[nf + nr + j] = 1.0 / value

    found = []

    def search(depth):
        if depth == len(unknown):
            found.append(values[nf:nf + nr].copy())
            return
        for w in roots:
            assign(unknown[depth], w)
            if ok(checks[depth + 1]):
                search(depth + 1)

    if ok(checks[0]):
        search(0)
    unknown_arr = np.array(unknown, dtype=np.intp)
    out = []
    for z in dedup_sorted([r[unknown_arr] for r in found], tol.dedup_tol):
        r = np.ones(nr, dtype=np.complex128)
        r[unknown_arr] = z
        table = RSymbolTable(ring, r)
        if check_hexagons(F, table) <= tol.solver_tol:
            out.append(table)
    return out

def check_braiding_unitarity(R: RSymbolTable) -> float:
    """``max | |R^{ab}_c| - 1 |``: diagonal R-matrices are unitary iff unimodular."""
    if len(R.values) == 0:
        return 0.0
    return float(np.max(np.abs(np.abs(R.values) - 1.0)))


def monodromy(R: RSymbolTable, a, b, c) -> complex:
    """Double-braiding eigenvalue ``R^{ba}_c R^{ab}_c``."""
    ring = R.ring
    a, b, c = ring.index(a), ring.index(b), ring.index(c)
    if not ring.N[a, b, c] or not ring.N[b, a, c]:
        raise InadmissibleTriple(f"({ring.name(a)},{ring.name(b)},{ring.name(c)}) is not admissible")
    return R[(b, a, c)] * R[(a, b, c)]


def apply_gauge_r(R: RSymbolTable, g: GaugeTransformation) -> RSymbolTable:
    """``R'^{ab}_c = (g^{ab}_c / g^{ba}_c) R^{ab}_c``.

    The ratio is the one that keeps the hexagons covariant together with the
    F-symbol action in ``apply_gauge_f``.
    """
    if g.ring is not R.ring:
        raise MissingGaugeEntry("gauge and R-symbols live on different rings")
    rev = R.ring.reverse_triple_pos
    if np.any(rev < 0):
        raise MissingGaugeEntry("gauge action on R needs a commutative ring")
    return RSymbolTable(R.ring, g.values / g.values[rev] * R.values)

