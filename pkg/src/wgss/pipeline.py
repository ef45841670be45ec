"""End-to-end summarizer: preprocess, affinity, spectral clustering, ranking.

>>> summarizer = Summarizer.from_config(PipelineConfig(embedding_path="bn.vec"))  # doctest: +SKIP
>>> result = summarizer.summarize(text)  # doctest: +SKIP
>>> result.summary, result.diagnostics.k  # doctest: +SKIP
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Union

from .clustering import ClusteringParams, choose_k, spectral_cluster
from .embeddings import EmbeddingTable, load_vectors
from .errors import EmptyDocumentError, EmptyTableError, NoContentError
from .preprocess import (
    Document,
    build_document,
    default_stopwords,
    document_vocabulary,
    load_stopwords,
    profile_for,
)
from .ranking import STRATEGIES, IdfTable, SummarySelection, assemble_summary, select_representatives
from .similarity import (
    KERNELS,
    DEFAULT_SIGMA,
    PairwiseDistances,
    SimilarityParams,
    auto_sigma,
    build_affinity,
    pairwise_distances,
)

Sigma = Union[float, str]


@dataclass(frozen=True)
class PipelineConfig:
    """Every knob of the summarizer. ``sigma`` is a positive float or ``"auto"``."""

    language_tag: str = "bn"
    embedding_path: str | None = None
    stopword_path: str | None = None
    idf_path: str | None = None
    sigma: Sigma = DEFAULT_SIGMA
    proportion: float = 0.2
    kernel: str = "wgss"
    strategy: str = "tfidf"
    seed: int = 0
    kmeans_restarts: int = 10
    kmeans_max_iter: int = 300

    def __post_init__(self):
        profile_for(self.language_tag)
        if isinstance(self.sigma, str):
            if self.sigma != "auto":
                raise ValueError(f"sigma must be a positive number or 'auto', got {self.sigma!r}")
        else:
            SimilarityParams(sigma=float(self.sigma))
        if not 0 < self.proportion < 1:
            raise ValueError(f"proportion must lie in (0, 1), got {self.proportion!r}")
        if self.kernel not in KERNELS:
            raise ValueError(f"unknown kernel {self.kernel!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")

    @property
    def clustering(self) -> ClusteringParams:
        return ClusteringParams(proportion=self.proportion, seed=self.seed,
                                kmeans_max_iter=self.kmeans_max_iter,
                                kmeans_restarts=self.kmeans_restarts)


@dataclass
class Diagnostics:
    sentence_count: int
    eligible_count: int
    k: int
    cluster_sizes: list[int] = field(default_factory=list)
    sigma: float | None = None
    sigma_mode: str = "fixed"
    underflow_fraction: float = 0.0
    fallback: bool = False
    chosen_indexes: list[int] = field(default_factory=list)
    oov_tokens: int = 0
    kernel: str = "wgss"
    strategy: str = "tfidf"

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class SummaryResult:
    summary: str
    diagnostics: Diagnostics
    selection: SummarySelection


@dataclass(frozen=True, eq=False)
class PreparedDocument:
    """A tokenized document plus its sigma-independent distance statistics."""

    document: Document
    distances: PairwiseDistances | None


class Summarizer:
    """Holds the read-only resources and runs the pipeline on many documents."""

    def __init__(self, config: PipelineConfig, table: EmbeddingTable,
                 stopwords: Iterable[str] | None = None, idf: IdfTable | None = None):
        self.config = config
        self.table = table
        self.stopwords = frozenset(stopwords) if stopwords is not None else default_stopwords(config.language_tag)
        # Without a background corpus every IDF is equal and ranking reduces to TF.
        self.idf = idf if idf is not None else IdfTable(document_count=1)

    @classmethod
    def from_config(cls, config: PipelineConfig, texts: Iterable[str] | None = None) -> Summarizer:
        """Load resources named in ``config``.

        When ``texts`` is given, only vectors for their tokens are loaded.
        """
        if config.embedding_path is None:
            raise ValueError("config.embedding_path is required")
        if config.stopword_path is not None:
            stopwords = load_stopwords(config.stopword_path)
        else:
            stopwords = default_stopwords(config.language_tag)
        vocabulary = None
        if texts is not None:
            vocabulary = set()
            for text in texts:
                if text and text.strip():
                    vocabulary |= document_vocabulary(text, config.language_tag, stopwords)
        if vocabulary is not None and not vocabulary:
            raise EmptyDocumentError("input has no content words")
        try:
            table = load_vectors(config.embedding_path, vocabulary_filter=vocabulary)
        except EmptyTableError:
            if vocabulary is None:
                raise
            raise NoContentError(f"none of the {len(vocabulary)} input words has a vector in "
                                 f"{config.embedding_path}") from None
        idf = IdfTable.load(config.idf_path) if config.idf_path is not None else None
        return cls(config, table, stopwords, idf)

    def with_config(self, **changes) -> Summarizer:
        """Same resources, different pipeline knobs."""
        return Summarizer(replace(self.config, **changes), self.table, self.stopwords, self.idf)

    def prepare(self, text: str) -> PreparedDocument:
        doc = build_document(text, self.config.language_tag, self.stopwords, self.table)
        eligible = len(doc.eligible)
        k = choose_k(eligible, self.config.proportion)
        needs_distances = eligible >= 2 and eligible > k and (
            self.config.kernel == "wgss" or self.config.sigma == "auto")
        return PreparedDocument(doc, pairwise_distances(doc) if needs_distances else None)

    def summarize(self, text: str, sigma: Sigma | None = None) -> SummaryResult:
        return self.summarize_prepared(self.prepare(text), sigma=sigma)

    def summarize_prepared(self, prepared: PreparedDocument, sigma: Sigma | None = None) -> SummaryResult:
        cfg = self.config
        sigma = cfg.sigma if sigma is None else sigma
        doc = prepared.document
        eligible = doc.eligible
        k = choose_k(len(eligible), cfg.proportion)
        diag = Diagnostics(
            sentence_count=len(doc),
            eligible_count=len(eligible),
            k=k,
            sigma_mode="auto" if sigma == "auto" else "fixed",
            oov_tokens=sum(s.oov_count for s in doc.sentences),
            kernel=cfg.kernel,
            strategy=cfg.strategy,
        )
        if len(eligible) < 2 or len(eligible) <= k:
            selection = SummarySelection(tuple(s.index for s in eligible), cfg.strategy)
            diag.k = len(eligible)
            diag.cluster_sizes = [1] * len(eligible)
            diag.fallback = True
        else:
            stats = prepared.distances
            if stats is None and (cfg.kernel == "wgss" or sigma == "auto"):
                stats = pairwise_distances(doc)
            value = auto_sigma(stats) if sigma == "auto" else float(sigma)
            params = SimilarityParams(sigma=value, kernel=cfg.kernel)
            affinity = build_affinity(doc, params, stats=stats)
            clusters = spectral_cluster(affinity, k, cfg.clustering)
            selection = select_representatives(clusters, doc, self.idf, cfg.strategy)
            diag.sigma = value
            diag.underflow_fraction = affinity.underflow_fraction()
            diag.cluster_sizes = clusters.sizes()
        diag.chosen_indexes = list(selection.chosen_indexes)
        return SummaryResult(assemble_summary(selection, doc), diag, selection)


def summarize(text: str, config: PipelineConfig) -> SummaryResult:
    """One-shot helper: load the resources in ``config`` and summarize ``text``."""
    return Summarizer.from_config(config, texts=[text]).summarize(text)
