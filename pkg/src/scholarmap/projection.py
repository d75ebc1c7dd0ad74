"""PCA projection of researcher columns to 2D.

The number of researchers n is far smaller than the vocabulary size d, so
the fit goes through the n x n Gram matrix of centered data points rather
than the d x d covariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateDataError, DimensionMismatchError

_EIG_FLOOR = 1e-12


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray               # d-vector, per-term mean over researchers
    components: np.ndarray         # 2 x d, orthonormal rows (PC1, PC2)
    explained_variance: np.ndarray  # length 2, non-increasing


@dataclass(frozen=True)
class Coords2D:
    points: np.ndarray             # n x 2, aligned to researcher order


def _sign_fix(vec: np.ndarray) -> np.ndarray:
    """Make the entry of largest absolute value positive (ties: first index)."""
    i = int(np.argmax(np.abs(vec)))
    return -vec if vec[i] < 0 else vec


def _orthonormal_fallback(pc1: np.ndarray) -> np.ndarray:
    # Zero-variance second direction: deterministically pick the first basis
    # vector with a usable component orthogonal to PC1.
    for i in range(len(pc1)):
        e = np.zeros(len(pc1))
        e[i] = 1.0
        residual = e - np.dot(e, pc1) * pc1
        norm = np.linalg.norm(residual)
        if norm > 1e-8:
            return _sign_fix(residual / norm)
    raise DegenerateDataError("cannot construct a second orthonormal direction")


def fit_pca(matrix: sp.spmatrix) -> PcaModel:
    """Fit top-2 principal directions treating columns as data points."""
    d, n = matrix.shape
    if n < 2:
        raise DegenerateDataError(f"need at least 2 researchers, got {n}")

    dense = np.asarray(matrix.todense(), dtype=float).T  # n x d data points
    mean = dense.mean(axis=0)
    centered = dense - mean

    gram = centered @ centered.T  # n x n
    total_var = float(np.trace(gram))
    if total_var <= _EIG_FLOOR:
        raise DegenerateDataError("all data points are identical")

    eigvals, eigvecs = np.linalg.eigh(gram)  # ascending
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    components = np.zeros((2, d))
    variances = np.zeros(2)
    for j in range(2):
        lam = max(float(eigvals[j]), 0.0)
        variances[j] = lam / (n - 1)
        if lam > _EIG_FLOOR:
            direction = centered.T @ eigvecs[:, j] / np.sqrt(lam)
            direction /= np.linalg.norm(direction)
            components[j] = _sign_fix(direction)
        else:
            variances[j] = 0.0
            components[j] = _orthonormal_fallback(components[0])

    return PcaModel(mean=mean, components=components, explained_variance=variances)


def project(model: PcaModel, matrix: sp.spmatrix) -> Coords2D:
    d, n = matrix.shape
    if d != model.mean.shape[0]:
        raise DimensionMismatchError(f"matrix has {d} rows, model expects {model.mean.shape[0]}")
    dense = np.asarray(matrix.todense(), dtype=float).T
    centered = dense - model.mean
    return Coords2D(points=centered @ model.components.T)
