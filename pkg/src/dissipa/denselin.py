"""Small dense linear-algebra kernels.

The eigensolvers and the matrix exponential delegate to LAPACK (through
numpy) and to scipy's Pade scaling-and-squaring ``expm``; this module wraps
them with the residual and conditioning contracts the rest of the package
relies on.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import (
    ContractError,
    DefectiveError,
    DomainError,
    EigenError,
    RangeError,
)

__all__ = [
    "SpectralDecomposition",
    "Cluster",
    "EigenClusterSet",
    "eig_general",
    "eig_hermitian",
    "cluster_projections",
    "projection_jump",
    "spd_sqrt",
    "spd_inv_sqrt",
    "kernel_basis",
    "matrix_exp",
    "matrix_exp_batch",
    "min_eig_sym",
    "hermitian_part",
    "EigenError",
    "DefectiveError",
    "DomainError",
    "RangeError",
]

DEFAULT_REL_GAP = 1e-6
RESIDUAL_TOL = 1e-9
MAX_VECTOR_COND = 1e8


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    hermitian: bool = False

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class Cluster:
    representative: complex
    projection: np.ndarray
    multiplicity: int
    indices: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class EigenClusterSet:
    clusters: tuple[Cluster, ...]
    gap: float

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    @property
    def representatives(self) -> np.ndarray:
        return np.array([c.representative for c in self.clusters])


def _as_square(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ContractError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractError("matrix has non-finite entries")
    return M


def _residuals(M, vals, vecs) -> np.ndarray:
    return np.linalg.norm(M @ vecs - vecs * vals[None, :], axis=0)


def eig_general(M) -> SpectralDecomposition:
    """Right eigenpairs of a general (complex) square matrix.

    Columns are normalized to unit 2-norm.  Each residual must satisfy
    ``|M v - lambda v| <= 1e-9 |M|``; otherwise :class:`EigenError`.
    """
    M = _as_square(M)
    try:
        vals, vecs = np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"eigensolver did not converge: {exc}") from exc
    vecs = vecs / np.linalg.norm(vecs, axis=0)[None, :]
    res = _residuals(M, vals, vecs)
    scale = max(np.linalg.norm(M, 2), np.finfo(float).tiny)
    if np.any(res > RESIDUAL_TOL * scale):
        raise EigenError(f"residual {res.max():.3e} exceeds {RESIDUAL_TOL:g}*|M|={RESIDUAL_TOL * scale:.3e}")
    return SpectralDecomposition(vals.astype(complex), vecs.astype(complex), res)


def eig_hermitian(M, tol: float = 1e-10) -> SpectralDecomposition:
    """Ascending real eigenvalues and a unitary eigenvector matrix."""
    M = _as_square(M)
    scale = max(np.linalg.norm(M, 2), np.finfo(float).tiny)
    asym = np.linalg.norm(M - M.conj().T, 2)
    if asym > tol * scale:
        raise ContractError(f"matrix not Hermitian: |M - M*| = {asym:.3e} > {tol:g}*|M|")
    H = 0.5 * (M + M.conj().T)
    try:
        vals, vecs = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"Hermitian eigensolver failed: {exc}") from exc
    res = _residuals(H, vals, vecs)
    return SpectralDecomposition(vals.astype(float), vecs, res, hermitian=True)


def _single_linkage(vals: np.ndarray, thr: float) -> list[list[int]]:
    n = vals.size
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= thr:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = list(groups.values())
    out.sort(key=lambda g: (np.mean(vals[g]).real, np.mean(vals[g]).imag))
    return out


def cluster_projections(dec: SpectralDecomposition, rel_gap: float = DEFAULT_REL_GAP) -> EigenClusterSet:
    """Group eigenvalues by single linkage and build spectral projections.

    The threshold is ``rel_gap * (spectral diameter + 1)``.  Projections are
    ``V[:, c] @ inv(V)[c, :]``; an eigenvector matrix with condition number
    above 1e8 is treated as defective.
    """
    vals, V = dec.values, dec.vectors
    n = vals.size
    diam = float(np.max(np.abs(vals[:, None] - vals[None, :]))) if n > 1 else 0.0
    thr = rel_gap * (diam + 1.0)
    if dec.hermitian:
        Vinv = V.conj().T
    else:
        cond = np.linalg.cond(V)
        if not np.isfinite(cond) or cond > MAX_VECTOR_COND:
            raise DefectiveError(f"eigenvector matrix condition {cond:.3e} exceeds {MAX_VECTOR_COND:g}")
        Vinv = np.linalg.inv(V)
    clusters = []
    for g in _single_linkage(vals, thr):
        P = V[:, g] @ Vinv[g, :]
        rep = complex(np.mean(vals[g]))
        clusters.append(Cluster(rep, P, len(g), tuple(g)))
    return EigenClusterSet(tuple(clusters), thr)


def projection_jump(a: EigenClusterSet, b: EigenClusterSet) -> float:
    """Largest 2-norm change of a spectral projection between two cluster sets.

    Clusters are paired by optimal assignment of their representatives.  A
    change of cluster structure (count or multiplicities) gives ``inf``: the
    projections are not continuous across it.
    """
    if len(a) != len(b):
        return float("inf")
    cost = np.abs(a.representatives[:, None] - b.representatives[None, :])
    rows, cols = linear_sum_assignment(cost)
    worst = 0.0
    for i, j in zip(rows, cols):
        ca, cb = a.clusters[i], b.clusters[j]
        if ca.multiplicity != cb.multiplicity:
            return float("inf")
        worst = max(worst, float(np.linalg.norm(ca.projection - cb.projection, 2)))
    return worst


def spd_sqrt(M) -> np.ndarray:
    """Symmetric positive definite square root."""
    vals, vecs = _spd_eig(M)
    R = (vecs * np.sqrt(vals)[None, :]) @ vecs.T
    return 0.5 * (R + R.T)


def spd_inv_sqrt(M) -> np.ndarray:
    vals, vecs = _spd_eig(M)
    R = (vecs / np.sqrt(vals)[None, :]) @ vecs.T
    return 0.5 * (R + R.T)


def _spd_eig(M):
    M = np.asarray(_as_square(M), dtype=float)
    scale = max(np.abs(M).max(), np.finfo(float).tiny)
    if np.abs(M - M.T).max() > 1e-10 * scale:
        raise DomainError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(0.5 * (M + M.T))
    if vals[0] <= 0:
        raise DomainError(f"matrix is not positive definite (lambda_min = {vals[0]:.3e})")
    return vals, vecs


def kernel_basis(M, rank_tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel.

    Singular values at or below ``rank_tol * s_max`` count as zero; the
    default ``rank_tol`` is ``1e-10 * n``.
    """
    M = _as_square(M)
    n = M.shape[0]
    if rank_tol is None:
        rank_tol = 1e-10 * n
    if rank_tol <= 0:
        raise ContractError("rank_tol must be positive")
    _, s, vh = np.linalg.svd(M)
    if s[0] == 0.0:
        return np.eye(n, dtype=M.dtype)
    null = s <= rank_tol * s[0]
    return vh[null, :].conj().T


def matrix_exp(M, t: float = 1.0) -> np.ndarray:
    """``exp(t M)`` by scaling and squaring with a Pade approximant."""
    M = _as_square(M)
    if not np.isfinite(t):
        raise ContractError("t must be finite")
    with np.errstate(over="raise", invalid="raise"):
        try:
            E = scipy.linalg.expm(t * M)
        except FloatingPointError as exc:
            raise RangeError(f"overflow in exp(tM): {exc}") from exc
    if not np.all(np.isfinite(E)):
        raise RangeError("exp(tM) overflowed")
    return E


def matrix_exp_batch(M) -> np.ndarray:
    """``exp`` of each matrix in a stack of shape ``(..., n, n)``."""
    M = np.asarray(M)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise ContractError(f"expected a stack of square matrices, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractError("matrix has non-finite entries")
    with np.errstate(over="raise", invalid="raise"):
        try:
            E = scipy.linalg.expm(M)
        except FloatingPointError as exc:
            raise RangeError(f"overflow in batched exp: {exc}") from exc
    if not np.all(np.isfinite(E)):
        raise RangeError("batched exp overflowed")
    return E


def hermitian_part(M) -> np.ndarray:
    M = np.asarray(M)
    return 0.5 * (M + M.conj().T)


def min_eig_sym(M) -> float:
    """Smallest eigenvalue of the Hermitian part of ``M``."""
    M = _as_square(M)
    return float(np.linalg.eigvalsh(hermitian_part(M))[0])
