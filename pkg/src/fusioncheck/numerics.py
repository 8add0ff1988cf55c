"""Tolerance policy and the small numerical kernels used throughout."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import AmbiguousKernel, NoKernel, NonConvergence, PivotVanishes


@dataclass(frozen=True)
class Tolerance:
    eq_tol: float = 1e-9
    dedup_tol: float = 1e-6
    solver_tol: float = 1e-12

    def __post_init__(self):
        if not 0 < self.solver_tol <= self.eq_tol <= self.dedup_tol < 1:
            raise ValueError(
                "tolerances must satisfy 0 < solver_tol <= eq_tol <= dedup_tol < 1, got "
                f"{self.solver_tol}, {self.eq_tol}, {self.dedup_tol}"
            )

    def with_eq_tol(self, eq_tol: float) -> "Tolerance":
        """Override the equality threshold, dragging the other two along if needed."""
        return Tolerance(
            eq_tol=eq_tol,
            dedup_tol=max(self.dedup_tol, eq_tol),
            solver_tol=min(self.solver_tol, eq_tol),
        )


DEFAULT_TOL = Tolerance()


def kernel_basis(M, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical null space of ``M``."""
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    n = M.shape[1]
    if M.size == 0:
        return np.eye(n, dtype=np.complex128)
    _, s, vh = np.linalg.svd(M)
    threshold = tol.eq_tol * (1.0 + (s[0] if s.size else 0.0))
    rank = int(np.sum(s > threshold))
    return vh[rank:].conj().T


def kernel_vector(M, pivot_index: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Return the kernel vector of ``M`` scaled so that ``v[pivot_index] == 1``.

    The numerical kernel must be exactly one-dimensional.
    """
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    n = M.shape[1]
    if not 0 <= pivot_index < n:
        raise IndexError(f"pivot index {pivot_index} out of range for {n} columns")
    basis = kernel_basis(M, tol)
    k = basis.shape[1]
    if k == 0:
        raise NoKernel(f"matrix of shape {M.shape} has trivial kernel")
    if k > 1:
        raise AmbiguousKernel(f"kernel has dimension {k}", basis=basis)
    v = basis[:, 0]
    if abs(v[pivot_index]) <= tol.eq_tol:
        raise PivotVanishes(f"kernel vector vanishes at pivot {pivot_index}")
    return v / v[pivot_index]


def dominant_eigenpair(M, max_iter: int = 100_000, rtol: float = 1e-14):
    """Perron-Frobenius eigenpair of a nonnegative matrix by power iteration on ``M + I``.

    The shift keeps periodic matrices (permutations, bipartite adjacency)
    from oscillating.  The eigenvector is scaled to first coordinate 1 when
    that coordinate is nonzero, otherwise to unit norm.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if np.any(M < 0):
        raise ValueError("matrix must be entrywise nonnegative")
    n = M.shape[0]
    A = M + np.eye(n)
    v = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        w = A @ v
        w /= np.linalg.norm(w)
        if np.linalg.norm(w - v) <= rtol:
            v = w
            break
        v = w
    else:
        raise NonConvergence(f"power iteration did not converge in {max_iter} steps")
    eigenvalue = float(v @ (M @ v)) / float(v @ v)
    if v[0] > rtol:
        v = v / v[0]
    return eigenvalue, v


def _sort_key(z: np.ndarray):
    return tuple(x for c in z for x in (round(c.real, 9) + 0.0, round(c.imag, 9) + 0.0))


def dedup_sorted(points, dedup_tol: float):
    """Drop near-duplicates (max-coordinate distance) and sort by (re, im)."""
    kept: list[np.ndarray] = []
    for p in points:
        if not any(np.max(np.abs(p - q), initial=0.0) <= dedup_tol for q in kept):
            kept.append(p)
    return sorted(kept, key=_sort_key)


def multistart_root_solve(residual, n_unknowns: int, starts: int, seed: int,
                          tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Find roots of ``residual`` (complex vector -> real vector) from many starts.

    Each start is a random point on the unit torus; Levenberg-Marquardt
    (damped Gauss-Newton) runs on the real and imaginary parts.  Only points
    whose final residual norm is at most ``tol.solver_tol`` are kept.
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    if n_unknowns == 0:
        r = np.asarray(residual(np.zeros(0, dtype=np.complex128)), dtype=float)
        return [np.zeros(0, dtype=np.complex128)] if np.linalg.norm(r) <= tol.solver_tol else []

    def real_residual(x):
        with np.errstate(all="ignore"):
            r = np.asarray(residual(x[:n_unknowns] + 1j * x[n_unknowns:]), dtype=float)
        if not np.all(np.isfinite(r)):
            r = np.nan_to_num(r, nan=1e150, posinf=1e150, neginf=-1e150)
        return r

    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(starts, n_unknowns))
    m = real_residual(np.concatenate([np.cos(phases[0]), np.sin(phases[0])])).size
    method = "lm" if m >= 2 * n_unknowns else "trf"

    found = []
    for phase in phases:
        x0 = np.concatenate([np.cos(phase), np.sin(phase)])
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                sol = least_squares(real_residual, x0, method=method,
                                    xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * (n_unknowns + 1))
            except (ValueError, np.linalg.LinAlgError):
                continue
        z = sol.x[:n_unknowns] + 1j * sol.x[n_unknowns:]
        if np.linalg.norm(real_residual(sol.x)) <= tol.solver_tol:
            found.append(z)
    return dedup_sorted(found, tol.dedup_tol)
