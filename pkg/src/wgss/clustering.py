"""Spectral clustering of the sentence affinity graph.

Normalized variant: eigenvectors of the symmetric Laplacian
``I - D^-1/2 A D^-1/2`` for the ``k`` smallest eigenvalues, rows scaled to
unit length, then k-means with k-means++ seeding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalError
from .similarity import AffinityMatrix


@dataclass(frozen=True)
class ClusteringParams:
    proportion: float = 0.2
    seed: int = 0
    kmeans_max_iter: int = 300
    kmeans_restarts: int = 10

    def __post_init__(self):
        if not 0 < self.proportion < 1:
            raise ValueError(f"proportion must lie in (0, 1), got {self.proportion!r}")
        if self.kmeans_max_iter < 1 or self.kmeans_restarts < 1:
            raise ValueError("kmeans_max_iter and kmeans_restarts must be positive")


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    labels: np.ndarray
    k: int
    index_map: tuple[int, ...]

    def clusters(self) -> list[list[int]]:
        """Original sentence indexes grouped by cluster id."""
        groups: list[list[int]] = [[] for _ in range(self.k)]
        for row, label in enumerate(self.labels):
            groups[int(label)].append(self.index_map[row])
        return groups

    def sizes(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.k).tolist()


def choose_k(eligible_count: int, proportion: float) -> int:
    """Cluster count ``ceil(N * p)``, clamped to ``[1, N]``."""
    if eligible_count < 1:
        raise ValueError("eligible_count must be at least 1")
    if not 0 < proportion < 1:
        raise ValueError(f"proportion must lie in (0, 1), got {proportion!r}")
    # Rounding first keeps e.g. 35 * 0.2 = 7.000000000000001 from becoming 8.
    k = math.ceil(round(eligible_count * proportion, 9))
    return max(1, min(k, eligible_count))


def normalized_laplacian(values: np.ndarray) -> np.ndarray:
    degree = values.sum(axis=1)
    # Isolated vertices get unit degree so D^-1/2 stays finite.
    degree = np.where(degree > 0, degree, 1.0)
    inv_sqrt = 1.0 / np.sqrt(degree)
    lap = np.eye(len(values)) - inv_sqrt[:, None] * values * inv_sqrt[None, :]
    return (lap + lap.T) / 2.0


def laplacian_eigenpairs(values: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """The ``k`` smallest eigenvalues of the normalized Laplacian and their eigenvectors."""
    lap = normalized_laplacian(values)
    try:
        eigvals, eigvecs = scipy.linalg.eigh(lap, subset_by_index=[0, k - 1])
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigendecomposition of {lap.shape} Laplacian failed: {exc}") from exc
    if not (np.all(np.isfinite(eigvals)) and np.all(np.isfinite(eigvecs))):
        raise NumericalError("eigendecomposition produced non-finite values")
    return eigvals, eigvecs


def spectral_embedding(values: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and row-normalized eigenvectors for the ``k`` smallest eigenvalues."""
    eigvals, eigvecs = laplacian_eigenpairs(values, k)
    norms = np.linalg.norm(eigvecs, axis=1, keepdims=True)
    embedding = np.divide(eigvecs, norms, out=np.zeros_like(eigvecs), where=norms > 0)
    return eigvals, embedding


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(points)
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = rng.choice(n, p=closest / total)
        else:
            idx = rng.integers(n)
        centers[c] = points[idx]
        closest = np.minimum(closest, ((points - centers[c]) ** 2).sum(axis=1))
    return centers


def _assign(points: np.ndarray, centers: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = d.argmin(axis=1)
    return labels, d[np.arange(len(points)), labels]


def _repair_empty(points: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    labels = labels.copy()
    while True:
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels
        largest = int(counts.argmax())
        members = np.flatnonzero(labels == largest)
        centroid = points[members].mean(axis=0)
        far = members[((points[members] - centroid) ** 2).sum(axis=1).argmax()]
        labels[far] = empty[0]


def _centroids(points: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    centers = np.zeros((k, points.shape[1]))
    for c in range(k):
        centers[c] = points[labels == c].mean(axis=0)
    return centers


def kmeans(points: np.ndarray, k: int, seed: int = 0, max_iter: int = 300,
           restarts: int = 10) -> tuple[np.ndarray, float]:
    """Lloyd's k-means with k-means++ seeding; returns (labels, inertia).

    Every returned cluster is non-empty. The run with the lowest within-cluster
    sum of squares wins; ties keep the earliest restart.
    """
    n = len(points)
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    rng = np.random.default_rng(seed)
    best_labels, best_inertia = None, math.inf
    for _ in range(restarts):
        centers = _kmeans_pp_init(points, k, rng)
        labels, _ = _assign(points, centers)
        labels = _repair_empty(points, labels, k)
        for _ in range(max_iter):
            centers = _centroids(points, labels, k)
            new_labels, _ = _assign(points, centers)
            new_labels = _repair_empty(points, new_labels, k)
            if np.array_equal(new_labels, labels):
                break
            labels = new_labels
        centers = _centroids(points, labels, k)
        inertia = float(((points - centers[labels]) ** 2).sum())
        if inertia < best_inertia:
            best_labels, best_inertia = labels, inertia
    return best_labels, best_inertia


def _canonical(labels: np.ndarray) -> np.ndarray:
    # Relabel clusters in order of first appearance.
    mapping: dict[int, int] = {}
    for label in labels:
        mapping.setdefault(int(label), len(mapping))
    return np.array([mapping[int(label)] for label in labels], dtype=np.intp)


def spectral_cluster(affinity: AffinityMatrix, k: int,
                     params: ClusteringParams = ClusteringParams()) -> ClusterAssignment:
    """Partition the rows of ``affinity`` into exactly ``k`` non-empty clusters."""
    n = affinity.order
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    if k == n:
        labels = np.arange(n, dtype=np.intp)
    elif k == 1:
        labels = np.zeros(n, dtype=np.intp)
    else:
        _, embedding = spectral_embedding(affinity.values, k)
        labels, _ = kmeans(embedding, k, seed=params.seed, max_iter=params.kmeans_max_iter,
                           restarts=params.kmeans_restarts)
    return ClusterAssignment(labels=_canonical(labels), k=k, index_map=affinity.index_map)
