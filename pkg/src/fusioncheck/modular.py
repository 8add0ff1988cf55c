"""S and T matrices of a ribbon structure and the modularity verdict."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fusion_ring import FusionRing
from .numerics import DEFAULT_TOL, Tolerance
from .ribbon import RibbonStructure

MODULAR = "modular"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ModularData:
    s_tilde: np.ndarray
    t: np.ndarray
    total_dim_sq: float
    verdict: str

    @property
    def s_normalized(self) -> np.ndarray:
        return self.s_tilde / np.sqrt(self.total_dim_sq)


def s_matrix(ring: FusionRing, rib: RibbonStructure) -> np.ndarray:
    """Unnormalized ``S~_{ab} = (theta_a theta_b)^{-1} sum_c N^{a* b}_c theta_c d_c``."""
    theta, d = rib.twist.values, rib.dims
    n = ring.n
    S = np.zeros((n, n), dtype=np.complex128)
    for a in range(n):
        a_dual = ring.dual[a]
        for b in range(n):
            S[a, b] = sum(theta[c] * d[c] for c in ring.outcomes(a_dual, b)) / (theta[a] * theta[b])
    return S


def t_matrix(rib: RibbonStructure) -> np.ndarray:
    return np.diag(rib.twist.values)


def is_modular(s_tilde, tol: Tolerance = DEFAULT_TOL) -> str:
    s = np.linalg.svd(np.atleast_2d(s_tilde), compute_uv=False)
    return MODULAR if s[-1] > tol.eq_tol * s[0] else DEGENERATE


def modular_data(ring: FusionRing, rib: RibbonStructure, tol: Tolerance = DEFAULT_TOL) -> ModularData:
    S = s_matrix(ring, rib)
    total = float(np.real(np.sum(rib.dims ** 2)))
    return ModularData(S, t_matrix(rib), total, is_modular(S, tol))
