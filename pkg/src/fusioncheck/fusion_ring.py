"""Fusion rings: labels, duality, multiplicities and Frobenius-Perron dimensions.

Labels are addressed either by name or by their position; position 0 is
always the monoidal unit.  All derived index structures (admissible
triples, admissible 6-tuples, coherence equation systems) are computed once
per ring and cached.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import MultiplicityUnsupported, UnknownLabel
from .kernels import SumProductSystem
from .numerics import dominant_eigenpair

LabelLike = Union[str, int]


@dataclass(frozen=True, eq=False)
class FusionRing:
    labels: tuple[str, ...]
    dual: tuple[int, ...]
    N: np.ndarray

    def __post_init__(self):
        N = np.array(self.N, dtype=np.int64)
        n = len(self.labels)
        if N.shape != (n, n, n):
            raise ValueError(f"multiplicity tensor must have shape {(n, n, n)}, got {N.shape}")
        if len(self.dual) != n:
            raise ValueError("dual map must cover every label")
        if len(set(self.labels)) != n:
            raise ValueError("label names must be unique")
        N.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(int(x) for x in self.dual))
        object.__setattr__(self, "N", N)

    @classmethod
    def from_rules(cls, labels: Sequence[str], dual: dict, fusion: Iterable[Sequence]) -> "FusionRing":
        """Build a ring from label names, a name->name dual map and fusion triples.

        A triple ``(a, b, c)`` sets ``N^{ab}_c = 1``; a 4-tuple carries an
        explicit multiplicity, and anything other than 1 is rejected.
        """
        labels = tuple(labels)
        pos = {name: i for i, name in enumerate(labels)}

        def idx(x):
            try:
                return pos[x]
            except KeyError:
                raise UnknownLabel(f"unknown label {x!r}") from None

        n = len(labels)
        N = np.zeros((n, n, n), dtype=np.int64)
        bad = []
        for rule in fusion:
            a, b, c = (idx(x) for x in rule[:3])
            mult = rule[3] if len(rule) > 3 else 1
            if mult != 1:
                bad.append(f"N^{{{rule[0]},{rule[1]}}}_{rule[2]} = {mult}")
            N[a, b, c] = 1
        if bad:
            raise MultiplicityUnsupported("only multiplicity-free rings are supported: " + ", ".join(bad), bad)
        missing = [name for name in labels if name not in dual]
        if missing:
            raise UnknownLabel(f"dual map has no entry for {missing}")
        return cls(labels, tuple(idx(dual[name]) for name in labels), N)

    # -- label handling -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: LabelLike) -> int:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.n:
                return int(label)
        elif isinstance(label, str):
            try:
                return self.labels.index(label)
            except ValueError:
                pass
        raise UnknownLabel(f"unknown label {label!r}")

    def name(self, a: int) -> str:
        return self.labels[a]

    def outcomes(self, a: int, b: int) -> list[int]:
        return [int(c) for c in np.flatnonzero(self.N[a, b])]

    # -- admissible index sets ------------------------------------------
    @cached_property
    def triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((int(a), int(b), int(c)) for a, b, c in zip(*np.nonzero(self.N)))

    @cached_property
    def triple_pos(self) -> dict:
        return {t: i for i, t in enumerate(self.triples)}

    @cached_property
    def sextuples(self) -> tuple[tuple[int, ...], ...]:
        out = []
        N = self.N
        for a, b, c, d in itertools.product(range(self.n), repeat=4):
            for e in self.outcomes(a, b):
                if not N[e, c, d]:
                    continue
                for f in self.outcomes(b, c):
                    if N[a, f, d]:
                        out.append((a, b, c, d, e, f))
        return tuple(out)

    @cached_property
    def sextuple_pos(self) -> dict:
        return {t: i for i, t in enumerate(self.sextuples)}

    @cached_property
    def f_blocks(self) -> tuple:
        """``((a,b,c,d), rows e, cols f, position matrix)`` for each F-matrix."""
        blocks = {}
        for t in self.sextuples:
            blocks.setdefault(t[:4], []).append(t)
        out = []
        for key, entries in blocks.items():
            rows = sorted({t[4] for t in entries})
            cols = sorted({t[5] for t in entries})
            pos = np.full((len(rows), len(cols)), -1, dtype=np.intp)
            for t in entries:
                pos[rows.index(t[4]), cols.index(t[5])] = self.sextuple_pos[t]
            out.append((key, tuple(rows), tuple(cols), pos))
        return tuple(out)

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.N, self.N.transpose(1, 0, 2)))

    @cached_property
    def is_pointed(self) -> bool:
        return bool(np.allclose(fp_dimensions(self), 1.0))

    # -- coherence equation systems -------------------------------------
    @cached_property
    def pentagon_system(self) -> SumProductSystem:
        """Pentagon equations over the value layout ``[F..., 1, 0]``.

        [F^{fcd}_e]_{g,l} [F^{abl}_e]_{f,k} = sum_h [F^{abc}_g]_{f,h} [F^{ahd}_e]_{g,k} [F^{bcd}_k]_{h,l}
        """
        nf = len(self.sextuples)
        one, zero = nf, nf + 1
        fpos = self.sextuple_pos.get
        lhs, ptr, rhs, tags = [], [0], [], []
        n = self.n
        for a, b, c, d in itertools.product(range(n), repeat=4):
            for f in self.outcomes(a, b):
                for g in self.outcomes(f, c):
                    for e in self.outcomes(g, d):
                        for l in self.outcomes(c, d):
                            for k in self.outcomes(b, l):
                                if not self.N[a, k, e]:
                                    continue
                                x, y = fpos((f, c, d, e, g, l)), fpos((a, b, l, e, f, k))
                                lhs.append((x, y, one) if x is not None and y is not None else (zero, one, one))
                                for h in range(n):
                                    p = fpos((a, b, c, g, f, h))
                                    q = fpos((a, h, d, e, g, k))
                                    r = fpos((b, c, d, k, h, l))
                                    if p is not None and q is not None and r is not None:
                                        rhs.append((p, q, r))
                                ptr.append(len(rhs))
                                tags.append((a, b, c, d, e, f, g, k, l))
        return SumProductSystem(lhs, ptr, rhs, tags)

    @cached_property
    def hexagon_system(self) -> SumProductSystem:
        """Both hexagon families over the value layout ``[F..., R..., Rrev..., 1, 0]``.

        R^{ca}_e [F^{acb}_d]_{e,g} R^{cb}_g = sum_f [F^{cab}_d]_{e,f} R^{cf}_d [F^{abc}_d]_{f,g}

        The second family is the same identity with every R^{xy}_z replaced by
        the reverse braiding 1 / R^{yx}_z (stored in the ``Rrev`` block).
        """
        nf, nr = len(self.sextuples), len(self.triples)
        one, zero = nf + 2 * nr, nf + 2 * nr + 1
        fpos = self.sextuple_pos.get
        lhs, ptr, rhs, tags = [], [0], [], []
        for family, offset in (("R", nf), ("Rrev", nf + nr)):
            def rpos(t, offset=offset):
                i = self.triple_pos.get(t)
                return None if i is None else offset + i

            for a, b, c, d in itertools.product(range(self.n), repeat=4):
                for e in self.outcomes(a, c):
                    if not self.N[e, b, d]:
                        continue
                    for g in self.outcomes(c, b):
                        if not self.N[a, g, d]:
                            continue
                        factors = (rpos((c, a, e)), fpos((a, c, b, d, e, g)), rpos((c, b, g)))
                        lhs.append(factors if None not in factors else (zero, one, one))
                        for f in self.outcomes(a, b):
                            term = (fpos((c, a, b, d, e, f)), rpos((c, f, d)), fpos((a, b, c, d, f, g)))
                            if None not in term:
                                rhs.append(term)
                        ptr.append(len(rhs))
                        tags.append((family, a, b, c, d, e, g))
        return SumProductSystem(lhs, ptr, rhs, tags)

    @cached_property
    def reverse_triple_pos(self) -> np.ndarray:
        """For each admissible (a,b,c), the position of (b,a,c), or -1."""
        return np.array([self.triple_pos.get((b, a, c), -1) for a, b, c in self.triples], dtype=np.intp)


def validate_ring(ring: FusionRing) -> list[str]:
    """Check the fusion-ring axioms exhaustively; returns the violations found."""
    N, n, dual = ring.N, ring.n, ring.dual
    problems = []
    bad = np.argwhere((N != 0) & (N != 1))
    for a, b, c in bad:
        problems.append(f"multiplicity-free: N^{{{ring.name(a)},{ring.name(b)}}}_{ring.name(c)} = {N[a, b, c]}")
    eye = np.eye(n, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if N[0, a, b] != eye[a, b] or N[a, 0, b] != eye[a, b]:
                problems.append(f"unit: N^{{I,{ring.name(a)}}}_{ring.name(b)} / N^{{{ring.name(a)},I}}_{ring.name(b)} "
                                f"must be {eye[a, b]}")
    if dual[0] != 0:
        problems.append("duality: the unit must be self-dual")
    for a in range(n):
        if not 0 <= dual[a] < n or dual[dual[a]] != a:
            problems.append(f"duality: dual map is not an involution at {ring.name(a)}")
            continue
        for b in range(n):
            want = 1 if b == dual[a] else 0
            if N[a, b, 0] != want:
                problems.append(f"duality: N^{{{ring.name(a)},{ring.name(b)}}}_I must be {want}")
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("bcf,afd->abcd", N, N)
    for a, b, c, d in np.argwhere(left != right):
        problems.append("associativity: (ab)c != a(bc) in channel "
                        f"({ring.name(a)},{ring.name(b)},{ring.name(c)}) -> {ring.name(d)}")
    return problems


def fusion_matrix(ring: FusionRing, a: LabelLike) -> np.ndarray:
    """Left multiplication by ``a``: entry ``(b, c)`` is ``N^{ab}_c``."""
    return np.array(ring.N[ring.index(a)])


def fp_dimensions(ring: FusionRing) -> np.ndarray:
    dims = np.empty(ring.n)
    for a in range(ring.n):
        dims[a], _ = dominant_eigenpair(ring.N[a])
    dims[0] = 1.0
    return dims


def ring_characters(ring: FusionRing, atol: float = 1e-8) -> list[np.ndarray]:
    """All one-dimensional characters of a commutative fusion ring.

    A character is a simultaneous eigenvector of the fusion matrices,
    normalized to 1 at the unit; its value at ``a`` is the eigenvalue of
    ``N_a``.  Found by diagonalizing a fixed generic combination.  Sorted so
    the largest real values come first (the FP character leads).
    """
    weights = np.random.default_rng(20240917).normal(size=ring.n)
    combo = np.tensordot(weights, ring.N.astype(float), axes=1)
    _, vecs = np.linalg.eig(combo)
    chars = []
    for v in vecs.T:
        if abs(v[0]) < atol:
            continue
        chi = v / v[0]
        prod = np.einsum("abc,c->ab", ring.N, chi)
        if np.allclose(prod, np.outer(chi, chi), atol=atol):
            chars.append(chi)
    chars.sort(key=lambda chi: tuple(-round(x.real, 9) for x in chi) + tuple(round(x.imag, 9) for x in chi))
    return chars
