"""Twists, ribbon structures and the sign-character torsor.

Quantum dimensions come from the twist-trace identity
``sum_c N^{aa}_c R^{aa}_c d_c = theta_a d_a`` together with ``d_a = d_{a*}``,
which only involves gauge-invariant data.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .braiding import RSymbolTable
from .errors import (AmbiguousKernel, DegenerateDimension, InvalidSeed,
                     MultipleUnitaryRibbons, MultiplicativityViolation,
                     NoConsistentTwist, NoKernel, NoUnitaryRibbon, TheoremViolation)
from .fsymbols import FSymbolTable
from .fusion_ring import FusionRing, fp_dimensions, ring_characters
from .numerics import DEFAULT_TOL, Tolerance, kernel_vector


@dataclass(frozen=True, eq=False)
class Twist:
    ring: FusionRing
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != (self.ring.n,):
            raise ValueError("twist needs one value per label")
        if np.any(values == 0):
            raise ValueError("twist values must be nonzero")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_entries(cls, ring: FusionRing, entries) -> "Twist":
        values = np.ones(ring.n, dtype=np.complex128)
        for label, value in entries.items():
            values[ring.index(label)] = complex(value)
        return cls(ring, values)

    def __getitem__(self, label) -> complex:
        return complex(self.values[self.ring.index(label)])

    def __mul__(self, gamma: "SignCharacter") -> "Twist":
        return Twist(self.ring, self.values * np.asarray(gamma.values))


@dataclass(frozen=True, eq=False)
class SignCharacter:
    ring: FusionRing
    values: tuple[int, ...]

    @property
    def label(self) -> str:
        return "".join("+" if v > 0 else "-" for v in self.values)

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __mul__(self, other: "SignCharacter") -> "SignCharacter":
        return SignCharacter(self.ring, tuple(x * y for x, y in zip(self.values, other.values)))


@dataclass(frozen=True, eq=False)
class RibbonStructure:
    twist: Twist
    dims: np.ndarray
    gamma: SignCharacter

    @property
    def ring(self) -> FusionRing:
        return self.twist.ring


def check_balancing(ring: FusionRing, R: RSymbolTable, t: Twist) -> float:
    """``max |theta_c - theta_a theta_b R^{ba}_c R^{ab}_c|`` over admissible triples."""
    theta = t.values
    rev = ring.reverse_triple_pos
    worst = 0.0
    for i, (a, b, c) in enumerate(ring.triples):
        if rev[i] < 0:
            return float("inf")
        dev = abs(theta[c] - theta[a] * theta[b] * R.values[rev[i]] * R.values[i])
        worst = max(worst, dev)
    return worst


def check_ribbon_condition(ring: FusionRing, t: Twist) -> float:
    """``max |theta_{a*} - theta_a|``."""
    theta = t.values
    return float(np.max(np.abs(theta[list(ring.dual)] - theta)))


def sign_characters(ring: FusionRing) -> list[SignCharacter]:
    """All {+1,-1}-valued ring characters with gamma_{a*} = gamma_a, trivial first."""
    out = []
    n = ring.n
    for signs in itertools.product((1, -1), repeat=n - 1):
        gamma = (1,) + signs
        if any(gamma[a] * gamma[b] != gamma[c] for a, b, c in ring.triples):
            continue
        if any(gamma[ring.dual[a]] != gamma[a] for a in range(n)):
            continue
        out.append(SignCharacter(ring, gamma))
    return out


def _trace_system(ring: FusionRing, R: RSymbolTable, t: Twist) -> np.ndarray:
    n = ring.n
    rows = []
    for a in range(n):
        row = np.zeros(n, dtype=np.complex128)
        for c in ring.outcomes(a, a):
            row[c] += R[(a, a, c)]
        row[a] -= t.values[a]
        rows.append(row)
    for a in range(n):
        if ring.dual[a] > a:
            row = np.zeros(n, dtype=np.complex128)
            row[a], row[ring.dual[a]] = 1.0, -1.0
            rows.append(row)
    return np.array(rows)


def quantum_dims(ring: FusionRing, R: RSymbolTable, t: Twist, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Quantum dimensions of the ribbon structure ``t``, normalized to ``d_I = 1``.

    When the trace system leaves the kernel more than one-dimensional (labels
    whose squares never reach the unit, as in Z_3), the ring character lying
    in that kernel is used instead.
    """
    M = _trace_system(ring, R, t)
    try:
        d = kernel_vector(M, 0, tol)
    except AmbiguousKernel as exc:
        scale = tol.eq_tol * (1.0 + np.linalg.norm(M, 2))
        inside = [chi for chi in ring_characters(ring)
                  if np.linalg.norm(M @ chi) <= scale * np.linalg.norm(chi)]
        if len(inside) != 1:
            raise AmbiguousKernel(f"{len(inside)} ring characters solve the twist-trace system",
                                  basis=exc.basis) from None
        d = inside[0]
    prod = np.einsum("abc,c->ab", ring.N, d)
    if not np.allclose(prod, np.outer(d, d), rtol=0, atol=10 * tol.eq_tol * (1 + np.max(np.abs(d))) ** 2):
        raise MultiplicativityViolation("dimensions are not a ring character; (R, theta) are inconsistent")
    if np.max(np.abs(d[list(ring.dual)] - d)) > tol.eq_tol * (1 + np.max(np.abs(d))):
        raise MultiplicativityViolation("dimensions are not duality-invariant")
    return d


def _trace_twist(ring: FusionRing, R: RSymbolTable, d: np.ndarray) -> np.ndarray:
    theta = np.empty(ring.n, dtype=np.complex128)
    for a in range(ring.n):
        theta[a] = sum(d[c] * R[(a, a, c)] for c in ring.outcomes(a, a)) / d[a]
    return theta


def canonical_twist(F: FSymbolTable, R: RSymbolTable, tol: Tolerance = DEFAULT_TOL) -> Twist:
    """The twist ``theta_a = (1/d_a) sum_c N^{aa}_c d_c R^{aa}_c`` for a consistent ``d``.

    Candidate dimension vectors are the Frobenius-Perron dimensions first,
    then the remaining ring characters.  The first candidate producing a
    balanced ribbon twist with unimodular values wins; failing that, the
    first balanced ribbon twist at all.
    """
    ring = F.ring
    candidates = [fp_dimensions(ring).astype(np.complex128)]
    for chi in ring_characters(ring):
        if not any(np.allclose(chi, c, atol=1e-8) for c in candidates):
            candidates.append(chi)
    valid = []
    for d in candidates:
        if np.any(np.abs(d) <= tol.eq_tol):
            continue
        t = Twist(ring, _trace_twist(ring, R, d))
        if check_balancing(ring, R, t) > tol.eq_tol or check_ribbon_condition(ring, t) > tol.eq_tol:
            continue
        try:
            dims = quantum_dims(ring, R, t, tol)
        except (NoKernel, AmbiguousKernel, MultiplicativityViolation):
            continue
        if np.max(np.abs(dims - d)) > 1e3 * tol.eq_tol:
            continue
        valid.append(t)
        if np.max(np.abs(np.abs(t.values) - 1.0)) <= tol.eq_tol:
            return t
    if valid:
        return valid[0]
    raise NoConsistentTwist("no dimension vector yields a balanced ribbon twist for this braiding")


def enumerate_ribbon_structures(F: FSymbolTable, R: RSymbolTable, seed_twist: Twist,
                                tol: Tolerance = DEFAULT_TOL) -> list[RibbonStructure]:
    """Every ribbon structure, as the orbit of ``seed_twist`` under the sign characters."""
    ring = F.ring
    bal, rib = check_balancing(ring, R, seed_twist), check_ribbon_condition(ring, seed_twist)
    if bal > tol.eq_tol or rib > tol.eq_tol:
        raise InvalidSeed(f"seed twist fails balancing ({bal:.3g}) or ribbon condition ({rib:.3g})")
    out = []
    for gamma in sign_characters(ring):
        t = seed_twist * gamma
        out.append(RibbonStructure(t, quantum_dims(ring, R, t, tol), gamma))
    return out


def _is_unitary_ribbon(rib: RibbonStructure, tol: Tolerance) -> bool:
    if np.max(np.abs(np.abs(rib.twist.values) - 1.0)) > tol.eq_tol:
        return False
    for a, d in enumerate(rib.dims):
        if abs(d.real) <= tol.eq_tol:
            raise DegenerateDimension(f"dimension of {rib.ring.name(a)} is numerically zero")
        if abs(d.imag) > tol.eq_tol or d.real <= tol.eq_tol:
            return False
    return True


def select_unitary_ribbon(structures: list[RibbonStructure], f_unitary: bool,
                          tol: Tolerance = DEFAULT_TOL) -> RibbonStructure:
    """The unique ribbon structure with unimodular twists and positive dimensions."""
    survivors = [s for s in structures if _is_unitary_ribbon(s, tol)]
    if len(survivors) == 1:
        return survivors[0]
    if len(survivors) > 1:
        raise MultipleUnitaryRibbons(f"{len(survivors)} ribbon structures have positive dimensions")
    if f_unitary:
        raise TheoremViolation("unitary F-data but no ribbon structure has positive dimensions")
    raise NoUnitaryRibbon("no ribbon structure has unimodular twists and positive dimensions")
