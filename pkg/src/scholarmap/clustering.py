"""Gaussian mixture clustering of the 2D researcher coordinates.

EM with full covariances, initialized by seeded k-means++ plus a short
k-means refinement. A single seeded run per (k, seed) keeps the cluster
slider deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidKError, NotSpdError
from .projection import Coords2D

COV_REG = 1e-6          # added to covariance diagonals every M-step
TOL = 1e-6              # log-likelihood improvement threshold
MAX_ITER = 200
KMEANS_ITERS = 10
DEFAULT_SEED = 42
MAX_CLUSTERS = 10


@dataclass(frozen=True)
class GmmModel:
    k: int
    weights: np.ndarray            # k, sums to 1
    means: np.ndarray              # k x 2
    covariances: np.ndarray        # k x 2 x 2, SPD
    log_likelihood: float
    responsibilities: np.ndarray   # n x k, rows sum to 1
    labels: np.ndarray             # n, argmax responsibility
    seed: int
    ll_history: tuple[float, ...] = ()


@dataclass(frozen=True)
class Ellipse:
    center: tuple[float, float]
    half_axes: tuple[float, float]  # 3 sigma along each principal axis, descending
    rotation: float                 # radians of major axis vs x-axis, in (-pi/2, pi/2]


def default_k(n: int) -> int:
    return min(5, n)


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.RandomState) -> np.ndarray:
    n = len(points)
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.randint(n)]
    dist_sq = np.sum((points - centers[0]) ** 2, axis=1)
    for j in range(1, k):
        total = dist_sq.sum()
        if total <= 0.0:
            # remaining points coincide with chosen centers; pick uniformly
            centers[j] = points[rng.randint(n)]
            continue
        probs = dist_sq / total
        idx = rng.choice(n, p=probs)
        centers[j] = points[idx]
        dist_sq = np.minimum(dist_sq, np.sum((points - centers[j]) ** 2, axis=1))
    return centers


def _kmeans_refine(points: np.ndarray, centers: np.ndarray, iters: int) -> np.ndarray:
    for _ in range(iters):
        dists = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)
        assign = np.argmin(dists, axis=1)
        for j in range(len(centers)):
            members = points[assign == j]
            if len(members):
                centers[j] = members.mean(axis=0)
    return centers


def _log_gaussian(points: np.ndarray, mean: np.ndarray, cov: np.ndarray) -> np.ndarray:
    diff = points - mean
    det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
    inv = np.array([[cov[1, 1], -cov[0, 1]], [-cov[1, 0], cov[0, 0]]]) / det
    maha = np.einsum("ni,ij,nj->n", diff, inv, diff)
    return -0.5 * (maha + math.log(det) + 2.0 * math.log(2.0 * math.pi))


def fit_gmm(coords: Coords2D, k: int, seed: int = DEFAULT_SEED) -> GmmModel:
    points = np.asarray(coords.points, dtype=float)
    n = len(points)
    if n < 2:
        raise InvalidKError(k, n)
    if not 1 <= k <= n:
        raise InvalidKError(k, n)

    rng = np.random.RandomState(seed)
    centers = _kmeans_pp_init(points, k, rng)
    means = _kmeans_refine(points, centers.copy(), KMEANS_ITERS)

    weights = np.full(k, 1.0 / k)
    dists = np.linalg.norm(points[:, None, :] - means[None, :, :], axis=2)
    assign = np.argmin(dists, axis=1)
    covariances = np.empty((k, 2, 2))
    for j in range(k):
        members = points[assign == j]
        if len(members):
            diff = members - members.mean(axis=0)
            covariances[j] = diff.T @ diff / len(members)
        else:
            covariances[j] = np.zeros((2, 2))
        covariances[j] += COV_REG * np.eye(2)

    history = []
    prev_ll = -np.inf
    resp = np.zeros((n, k))
    for _ in range(MAX_ITER):
        # E-step
        log_prob = np.column_stack(
            [np.log(weights[j]) + _log_gaussian(points, means[j], covariances[j]) for j in range(k)]
        )
        max_lp = log_prob.max(axis=1, keepdims=True)
        log_norm = max_lp + np.log(np.exp(log_prob - max_lp).sum(axis=1, keepdims=True))
        resp = np.exp(log_prob - log_norm)
        ll = float(log_norm.sum())
        history.append(ll)
        if ll - prev_ll < TOL:
            break
        prev_ll = ll

        # M-step
        nk = resp.sum(axis=0)
        weights = nk / n
        safe_nk = np.maximum(nk, 1e-300)  # avoid NaN if a component starves
        means = (resp.T @ points) / safe_nk[:, None]
        for j in range(k):
            diff = points - means[j]
            covariances[j] = (resp[:, j, None] * diff).T @ diff / safe_nk[j] + COV_REG * np.eye(2)

    labels = np.argmax(resp, axis=1)
    return GmmModel(
        k=k,
        weights=weights,
        means=means,
        covariances=covariances,
        log_likelihood=history[-1],
        responsibilities=resp,
        labels=labels,
        seed=seed,
        ll_history=tuple(history),
    )


def ellipse_params(mean: np.ndarray, covariance: np.ndarray) -> Ellipse:
    """3-sigma ellipse of a 2D Gaussian: half-axes along the covariance
    eigenvectors, rotation of the major axis in (-pi/2, pi/2]."""
    cov = np.asarray(covariance, dtype=float)
    if cov.shape != (2, 2) or abs(cov[0, 1] - cov[1, 0]) > 1e-9:
        raise NotSpdError("covariance must be symmetric 2x2")
    eigvals, eigvecs = np.linalg.eigh(cov)
    if eigvals[0] <= 0.0:
        raise NotSpdError(f"covariance has non-positive eigenvalue {eigvals[0]}")
    # eigh returns ascending order; major axis is the second column
    major, minor = float(eigvals[1]), float(eigvals[0])
    if major - minor < 1e-12:
        rotation = 0.0  # isotropic, direction is arbitrary
    else:
        vx, vy = eigvecs[0, 1], eigvecs[1, 1]
        rotation = math.atan2(vy, vx)
        if rotation <= -math.pi / 2:
            rotation += math.pi
        elif rotation > math.pi / 2:
            rotation -= math.pi
    return Ellipse(
        center=(float(mean[0]), float(mean[1])),
        half_axes=(3.0 * math.sqrt(major), 3.0 * math.sqrt(minor)),
        rotation=rotation,
    )


def assign_colors(model: GmmModel) -> dict[int, int]:
    """Palette index per component: heavier components first, ties by mean-x."""
    order = sorted(range(model.k), key=lambda j: (-model.weights[j], model.means[j][0]))
    return {comp: color for color, comp in enumerate(order)}
