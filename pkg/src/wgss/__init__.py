"""Extractive summarization with word-pair Gaussian sentence similarity (WGSS).

Sentences are compared word by word: each word is matched with its nearest
word in the other sentence, and the Gaussian kernels of those distances are
combined by a geometric mean. The resulting affinity matrix is split by
spectral clustering and the best TF-IDF sentence of each cluster forms the
summary.
"""

__version__ = "0.1.0"

from .clustering import ClusterAssignment, ClusteringParams, choose_k, spectral_cluster
from .embeddings import EmbeddingTable, load_vectors, lookup, save_cache
from .errors import WgssError
from .pipeline import Diagnostics, PipelineConfig, Summarizer, SummaryResult, summarize
from .preprocess import (
    Document,
    Sentence,
    build_document,
    default_stopwords,
    load_stopwords,
    split_sentences,
    tokenize_and_filter,
)
from .ranking import (
    IdfTable,
    SummarySelection,
    assemble_summary,
    build_idf,
    idf,
    select_representatives,
    tfidf_sentence_score,
)
from .rouge import RougeScore, rouge_lcs, rouge_n, score_summary
from .similarity import (
    DEFAULT_SIGMA,
    AffinityMatrix,
    DistanceSet,
    SimilarityParams,
    auto_sigma,
    average_similarity,
    build_affinity,
    collect_distances,
    most_similar_word_distance,
    wgss_similarity,
)
