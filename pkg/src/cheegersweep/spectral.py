"""Normalized Laplacian and its dense symmetric eigendecomposition.

The eigensolver is a cyclic Jacobi method. Rotations are scheduled in
round-robin order so that each round applies ``n // 2`` disjoint rotations at
once; a sweep is ``n - 1`` rounds and touches every off-diagonal pair exactly
once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, as_mask

__all__ = [
    "ConvergenceError",
    "SpectralData",
    "normalized_laplacian",
    "eig_sym",
    "spectrum",
    "quadratic_form_edges",
    "ZERO_TOL",
]

ZERO_TOL = 1e-9


class ConvergenceError(ArithmeticError):
    def __init__(self, off_norm, sweeps):
        super().__init__(f"Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")
        self.off_norm = off_norm
        self.sweeps = sweeps


def normalized_laplacian(g: Graph) -> np.ndarray:
    d = g.degree.astype(float)
    lap = np.eye(g.n)
    u, w = g.edges[:, 0], g.edges[:, 1]
    vals = -1.0 / np.sqrt(d[u] * d[w])
    lap[u, w] = vals
    lap[w, u] = vals
    return lap


def _round_robin(m):
    """Pairings for a round-robin tournament over ``m`` (even) players."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        rounds.append([(players[i], players[m - 1 - i]) for i in range(m // 2)])
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def eig_sym(m: np.ndarray, max_sweeps: int = 100, tol: float | None = None):
    """Eigenvalues (ascending) and orthonormal eigenvector columns of symmetric ``m``.

    Raises :class:`ConvergenceError` if the off-diagonal Frobenius norm is still
    above ``tol * ||m||_F`` after ``max_sweeps`` sweeps.
    """
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    v = np.eye(n)
    fro = float(np.linalg.norm(a))
    if tol is None:
        tol = max(1e-14, 8 * n * np.finfo(float).eps)
    target = tol * max(fro, 1.0)

    rounds = []
    size = n + (n % 2)
    for pairs in _round_robin(size) if n > 1 else []:
        pairs = [(p, q) if p < q else (q, p) for p, q in pairs if p < n and q < n]
        p = np.array([pq[0] for pq in pairs], dtype=np.int64)
        q = np.array([pq[1] for pq in pairs], dtype=np.int64)
        rounds.append((p, q))

    off = _off_norm(a)
    sweeps = 0
    while off > target:
        if sweeps == max_sweeps:
            raise ConvergenceError(off, sweeps)
        sweeps += 1
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            rp, rq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p], a[:, q]
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
        a = 0.5 * (a + a.T)
        off = _off_norm(a)

    evals = np.diag(a).copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order]


@dataclass(frozen=True)
class SpectralData:
    """Eigenpairs of the normalized Laplacian.

    ``eigenvectors`` holds orthonormal eigenvectors of the Laplacian as columns;
    ``harmonic`` holds ``D^{-1/2}`` times each of them, so that for every column
    ``v`` we have ``||D^{1/2} v||_2 = 1``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    harmonic: np.ndarray
    residuals: np.ndarray
    degree: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[1])

    @property
    def fiedler(self) -> np.ndarray:
        """Harmonic eigenvector of the second smallest eigenvalue."""
        return self.harmonic[:, 1]

    @property
    def v_inf(self) -> float:
        return float(np.max(np.abs(self.fiedler)))

    def zero_multiplicity(self, tol: float | None = None) -> int:
        if tol is None:
            tol = ZERO_TOL * self.n
        return int(np.count_nonzero(np.abs(self.eigenvalues) <= tol))

    def to_dict(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "lambda1": self.lambda1,
            "v_inf_norm": self.v_inf,
            "residual_max": float(self.residuals.max()),
        }


def _fix_signs(vecs, eps=1e-12):
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        nz = np.flatnonzero(np.abs(vecs[:, j]) > eps)
        if nz.size and vecs[nz[0], j] < 0:
            vecs[:, j] = -vecs[:, j]
    return vecs


def spectrum(g: Graph, max_sweeps: int = 100) -> SpectralData:
    lap = normalized_laplacian(g)
    evals, evecs = eig_sym(lap, max_sweeps=max_sweeps)
    evecs = _fix_signs(evecs)
    harmonic = evecs / np.sqrt(g.degree.astype(float))[:, None]
    residuals = np.linalg.norm(lap @ evecs - evecs * evals, axis=0)
    return SpectralData(evals, evecs, harmonic, residuals, np.asarray(g.degree))


def quadratic_form_edges(g: Graph, s, t) -> float:
    """``(D^{1/2} 1_S)^T (I - L) (D^{1/2} 1_T)`` by dense arithmetic.

    Equals ``edges_between(g, s, t)``; kept as an independent cross-check.
    """
    sqrt_d = np.sqrt(g.degree.astype(float))
    x = sqrt_d * as_mask(g, s)
    y = sqrt_d * as_mask(g, t)
    return float(x @ ((np.eye(g.n) - normalized_laplacian(g)) @ y))

