"""Sentence similarity kernels and the sentence affinity matrix.

The word-pair Gaussian similarity (WGSS) of two sentences ``X`` and ``Y`` (sets
of word vectors) pairs every word with its nearest word in the other sentence,
then takes the geometric mean of the Gaussian kernels of those distances::

    sim(X, Y) = exp(-sum(D_i^2) / (2 n sigma^2))

where ``D_i`` runs over the nearest-word distances from both directions and
``n = |X| + |Y|``. The exponent is formed first and exponentiated once, so the
result underflows cleanly to 0.0 instead of multiplying ``n`` tiny kernels.

The word-averaging kernel compares sentence centroids instead and is kept as
a baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DegenerateDocumentError, IneligibleSentenceError
from .preprocess import Document

DEFAULT_SIGMA = 5e-11
KERNELS = ("wgss", "average")


@dataclass(frozen=True)
class SimilarityParams:
    sigma: float = DEFAULT_SIGMA
    kernel: str = "wgss"

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be a positive finite number, got {self.sigma!r}")
        if self.kernel not in KERNELS:
            raise ValueError(f"unknown kernel {self.kernel!r}; expected one of {KERNELS}")


@dataclass(frozen=True)
class DistanceSet:
    squared_sum: float
    count: int


def _as_vectors(vectors) -> np.ndarray:
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def _squared_distances(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # cdist forms sum((a - b)**2) directly: identical vectors give exactly 0,
    # which the tiny default sigma needs.
    return cdist(x, y, "sqeuclidean")


def most_similar_word_distance(x, Y) -> float:
    """Euclidean distance from word vector ``x`` to its nearest member of ``Y``."""
    Y = _as_vectors(Y)
    if len(Y) == 0:
        raise IneligibleSentenceError("nearest-word distance needs a non-empty sentence")
    x = np.asarray(x, dtype=np.float64).reshape(1, -1)
    if x.shape[1] != Y.shape[1]:
        raise ValueError(f"dimension mismatch: {x.shape[1]} vs {Y.shape[1]}")
    return math.sqrt(_squared_distances(x, Y).min())


def collect_distances(X, Y) -> DistanceSet:
    """Sum of squared nearest-word distances taken from both sentences."""
    X, Y = _as_vectors(X), _as_vectors(Y)
    if len(X) == 0 or len(Y) == 0:
        raise IneligibleSentenceError("both sentences need at least one word vector")
    sq = _squared_distances(X, Y)
    forward = sq.min(axis=1).sum()
    backward = sq.min(axis=0).sum()
    # Order the two halves canonically so that (X, Y) and (Y, X) agree bit for bit.
    total = min(forward, backward) + max(forward, backward)
    return DistanceSet(squared_sum=float(total), count=len(X) + len(Y))


def gaussian_from_distances(squared_sum, count, sigma):
    """``exp(-squared_sum / (2 count sigma^2))``; works elementwise on arrays."""
    mean_half = np.asarray(squared_sum, dtype=np.float64) / (2.0 * np.asarray(count, dtype=np.float64))
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        exponent = -(mean_half / sigma) / sigma
    exponent = np.where(mean_half == 0.0, 0.0, exponent)
    out = np.exp(exponent)
    return float(out) if out.ndim == 0 else out


def wgss_similarity(X, Y, params: SimilarityParams | float = DEFAULT_SIGMA) -> float:
    sigma = params.sigma if isinstance(params, SimilarityParams) else float(params)
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    ds = collect_distances(X, Y)
    return gaussian_from_distances(ds.squared_sum, ds.count, sigma)


def average_similarity(X, Y, params: SimilarityParams | float = DEFAULT_SIGMA) -> float:
    """Gaussian kernel between the two sentence centroids (baseline kernel)."""
    sigma = params.sigma if isinstance(params, SimilarityParams) else float(params)
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    X, Y = _as_vectors(X), _as_vectors(Y)
    if len(X) == 0 or len(Y) == 0:
        raise IneligibleSentenceError("both sentences need at least one word vector")
    sq = float(_squared_distances(X.mean(axis=0, keepdims=True), Y.mean(axis=0, keepdims=True))[0, 0])
    return gaussian_from_distances(sq, 1, sigma)


@dataclass(frozen=True, eq=False)
class AffinityMatrix:
    values: np.ndarray
    index_map: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.index_map)

    def underflow_fraction(self) -> float:
        """Fraction of off-diagonal entries that are exactly zero."""
        n = self.order
        if n < 2:
            return 0.0
        off = ~np.eye(n, dtype=bool)
        return float(np.count_nonzero(self.values[off] == 0.0) / off.sum())


@dataclass(frozen=True, eq=False)
class PairwiseDistances:
    """Sigma-independent WGSS statistics for every eligible sentence pair.

    ``squared_sums[i, j]`` is the two-way sum of squared nearest-word distances
    between eligible sentences ``i`` and ``j``; ``counts[i, j]`` the number of
    terms. ``nearest[i]`` has shape ``(words in i, N)`` and holds each word's
    squared distance to the nearest word of every sentence.
    """

    squared_sums: np.ndarray
    counts: np.ndarray
    nearest: tuple[np.ndarray, ...]
    index_map: tuple[int, ...]

    def affinity(self, sigma: float) -> AffinityMatrix:
        values = gaussian_from_distances(self.squared_sums, self.counts, sigma)
        np.fill_diagonal(values, 1.0)
        return AffinityMatrix(values=values, index_map=self.index_map)

    def nearest_word_distances(self) -> np.ndarray:
        """All nearest-word distances between distinct sentences, flattened."""
        parts = []
        for i, block in enumerate(self.nearest):
            parts.append(np.delete(block, i, axis=1).ravel())
        return np.sqrt(np.concatenate(parts)) if parts else np.empty(0)


def pairwise_distances(doc: Document) -> PairwiseDistances:
    eligible = doc.eligible
    n = len(eligible)
    if n < 2:
        raise DegenerateDocumentError(f"need at least 2 eligible sentences, got {n}")
    sizes = np.array([len(s.vectors) for s in eligible])
    words = np.concatenate([s.vectors for s in eligible], axis=0)
    offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    half = np.empty((n, n))
    nearest = []
    for i, sent in enumerate(eligible):
        sq = _squared_distances(sent.vectors, words)
        mins = np.minimum.reduceat(sq, offsets, axis=1)
        nearest.append(mins)
        half[i] = mins.sum(axis=0)
    # half[i, j] sums over words of i; the other direction is half[j, i].
    squared_sums = np.minimum(half, half.T) + np.maximum(half, half.T)
    counts = sizes[:, None] + sizes[None, :]
    return PairwiseDistances(
        squared_sums=squared_sums,
        counts=counts,
        nearest=tuple(nearest),
        index_map=tuple(s.index for s in eligible),
    )


def auto_sigma(doc: Document | PairwiseDistances) -> float:
    """Median nearest-word distance between distinct sentences of ``doc``.

    Falls back to the median of the non-zero distances, then to 1.0, so the
    result is always a usable positive sigma.
    """
    stats = doc if isinstance(doc, PairwiseDistances) else pairwise_distances(doc)
    d = stats.nearest_word_distances()
    if d.size:
        med = float(np.median(d))
        if med > 0:
            return med
        positive = d[d > 0]
        if positive.size:
            return float(np.median(positive))
    return 1.0


def build_affinity(doc: Document, params: SimilarityParams = SimilarityParams(),
                   stats: PairwiseDistances | None = None) -> AffinityMatrix:
    """Symmetric affinity matrix over the eligible sentences of ``doc``.

    Row ``r`` corresponds to sentence ``index_map[r]``; the diagonal is 1.
    ``stats`` may be passed to reuse distances across several sigmas.
    """
    if params.kernel == "average":
        eligible = doc.eligible
        if len(eligible) < 2:
            raise DegenerateDocumentError(f"need at least 2 eligible sentences, got {len(eligible)}")
        centroids = np.array([s.vectors.mean(axis=0) for s in eligible])
        sq = _squared_distances(centroids, centroids)
        sq = np.minimum(sq, sq.T)
        values = gaussian_from_distances(sq, 1, params.sigma)
        np.fill_diagonal(values, 1.0)
        return AffinityMatrix(values=values, index_map=tuple(s.index for s in eligible))
    if stats is None:
        stats = pairwise_distances(doc)
    return stats.affinity(params.sigma)
