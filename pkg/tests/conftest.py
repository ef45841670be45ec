import numpy as np
import pytest

from wgss import EmbeddingTable


def write_vec(path, vectors, header=None):
    """Write ``{word: vector}`` in the FastText text format."""
    dim = len(next(iter(vectors.values())))
    lines = [header if header is not None else f"{len(vectors)} {dim}"]
    for word, vec in vectors.items():
        lines.append(word + " " + " ".join(repr(float(v)) for v in vec))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def two_topic_vectors(dim=8, words_per_topic=12, spread=0.05, seed=0):
    """Two well-separated word clouds, ``a0..`` near +e0 and ``b0..`` near -e0."""
    rng = np.random.default_rng(seed)
    center = np.zeros(dim)
    center[0] = 3.0
    vectors = {}
    for i in range(words_per_topic):
        vectors[f"a{i}"] = center + rng.normal(scale=spread, size=dim)
        vectors[f"b{i}"] = -center + rng.normal(scale=spread, size=dim)
    return vectors


def two_topic_text(n_a=6, n_b=4, words=5, seed=1, words_per_topic=12):
    rng = np.random.default_rng(seed)
    labels = ["a"] * n_a + ["b"] * n_b
    rng.shuffle(labels)
    sentences = []
    for lab in labels:
        ids = rng.integers(0, words_per_topic, size=words)
        sentences.append(" ".join(f"{lab}{i}" for i in ids) + ".")
    return " ".join(sentences), labels


@pytest.fixture
def small_vec(tmp_path):
    return write_vec(tmp_path / "small.vec", {"ab": [1, 2, 3], "cd": [4, 5, 6]}, header="2 3")


@pytest.fixture
def topic_table():
    return EmbeddingTable.from_mapping(two_topic_vectors(), source_id="two-topic")


def adversarial_vectors(dim=4, per_topic=6, seed=0):
    """Topic ``a`` words sit near +-2e0, topic ``b`` near +-2e1.

    Sentences pair each word with its negation, so every sentence centroid is
    close to the origin and only per-word distances tell the topics apart.
    """
    rng = np.random.default_rng(seed)
    vectors = {}
    for i in range(per_topic):
        for topic, axis in (("a", 0), ("b", 1)):
            base = np.zeros(dim)
            base[axis] = 2.0
            vectors[f"{topic}p{i}"] = base + rng.normal(scale=0.05, size=dim)
            vectors[f"{topic}n{i}"] = -base + rng.normal(scale=0.05, size=dim)
    return vectors


def adversarial_dataset(n_docs=6, per_topic=6, seed=1):
    """``(id, text, references)`` triples; the reference covers both topics' vocabularies."""
    rng = np.random.default_rng(seed)
    out = []
    for d in range(n_docs):
        labels = ["a"] * 5 + ["b"] * 5
        rng.shuffle(labels)
        sentences = []
        for lab in labels:
            ids = rng.choice(per_topic, size=2, replace=False)
            sentences.append(" ".join(f"{lab}{s}{i}" for i in ids for s in "pn") + ".")
        ref = " ".join(f"{t}{s}{i}" for t in "ab" for i in range(per_topic) for s in "pn") + "."
        out.append((f"adv-{d}", " ".join(sentences), [ref]))
    return out
