"""Text -> Document: sentence splitting, tokenization, stop-word removal, vectors."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

import numpy as np

from .embeddings import EmbeddingTable
from .errors import EmptyDocumentError, NoContentError, ResourceError

DANDA = "।"

_DELIMITERS = {
    "bn": frozenset({DANDA, "?", "!"}),
    "generic": frozenset({DANDA, "?", "!", "."}),
}
_ALIASES = {"hi": "generic", "mr": "generic", "tr": "generic"}
LANGUAGES = ("bn", "generic", "hi", "mr", "tr")

# Joiners occur inside Bengali/Devanagari conjuncts; they never start or end a token.
_JOINERS = frozenset({"\u200c", "\u200d"})


def profile_for(language_tag: str) -> str:
    if language_tag in _DELIMITERS:
        return language_tag
    try:
        return _ALIASES[language_tag]
    except KeyError:
        raise ValueError(f"unknown language tag {language_tag!r}; expected one of {LANGUAGES}") from None


def split_sentences(text: str, language_tag: str = "bn") -> list[str]:
    """Split ``text`` after every run of sentence delimiters.

    A trailing segment without a delimiter is kept as the last sentence.
    Whitespace around sentences is stripped and empty segments are dropped.
    """
    if not text or not text.strip():
        raise EmptyDocumentError("input text is empty")
    delims = _DELIMITERS[profile_for(language_tag)]
    sentences = []
    start = 0
    i, n = 0, len(text)
    while i < n:
        if text[i] in delims:
            while i + 1 < n and text[i + 1] in delims:
                i += 1
            sentences.append(text[start:i + 1])
            start = i + 1
        i += 1
    sentences.append(text[start:])
    out = []
    for s in sentences:
        s = s.strip()
        if s and not all(c in delims for c in s):
            out.append(s)
    return out


def _is_word_char(ch: str) -> bool:
    # Letters, combining marks (vowel signs, virama) and digits.
    return unicodedata.category(ch)[0] in "LMN"


def tokenize(text: str) -> list[str]:
    """Maximal runs of Unicode letters, marks and digits, in order."""
    tokens = []
    current: list[str] = []
    for ch in text:
        if _is_word_char(ch) or (ch in _JOINERS and current):
            current.append(ch)
        elif current:
            tokens.append("".join(current).strip("".join(_JOINERS)))
            current = []
    if current:
        tokens.append("".join(current).strip("".join(_JOINERS)))
    return [t for t in tokens if t]


def tokenize_and_filter(sentence_text: str, stopwords: Iterable[str]) -> list[str]:
    return [t for t in tokenize(sentence_text) if t not in stopwords]


def load_stopwords(path) -> frozenset[str]:
    """Read a stop-word file: UTF-8, one word per line, ``#`` comments ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            words.add(word)
            words.add(unicodedata.normalize("NFC", word))
    if not words:
        raise ResourceError(f"{path}: stop-word list is empty")
    return frozenset(words)


def default_stopwords(language_tag: str) -> frozenset[str]:
    """The stop-word list shipped with the package for ``language_tag``."""
    profile_for(language_tag)
    ref = resources.files("wgss") / "data" / "stopwords" / f"{language_tag}.txt"
    with resources.as_file(ref) as path:
        return load_stopwords(path)


@dataclass(frozen=True, eq=False)
class Sentence:
    index: int
    raw_text: str
    tokens: tuple[str, ...]
    vectors: np.ndarray  # (embedded tokens, dimension), float64
    oov_count: int = 0
    stopword_count: int = 0

    @property
    def eligible(self) -> bool:
        return len(self.vectors) > 0


@dataclass(frozen=True, eq=False)
class Document:
    sentences: tuple[Sentence, ...]
    language_tag: str = "bn"
    dimension: int = field(default=0)

    def __len__(self) -> int:
        return len(self.sentences)

    @property
    def eligible(self) -> tuple[Sentence, ...]:
        return tuple(s for s in self.sentences if s.eligible)


def document_vocabulary(text: str, language_tag: str, stopwords: Iterable[str]) -> set[str]:
    """Filtered tokens of ``text``; used to pre-filter large vector files."""
    vocab: set[str] = set()
    for sentence in split_sentences(text, language_tag):
        vocab.update(tokenize_and_filter(sentence, stopwords))
    return vocab


def build_document(text: str, language_tag: str, stopwords: Iterable[str],
                   table: EmbeddingTable) -> Document:
    """Segment and tokenize ``text`` and attach embedding vectors.

    Out-of-vocabulary tokens stay in ``Sentence.tokens`` (they still count for
    TF-IDF) but contribute no vector. A sentence left with no vectors is
    ineligible for similarity and clustering.
    """
    sentences = []
    dim = table.dimension
    for index, raw in enumerate(split_sentences(text, language_tag)):
        all_tokens = tokenize(raw)
        tokens = [t for t in all_tokens if t not in stopwords]
        found = []
        for tok in tokens:
            vec = table.lookup(tok)
            if vec is not None:
                found.append(vec)
        vectors = np.array(found, dtype=np.float64).reshape(len(found), dim)
        vectors.setflags(write=False)
        sentences.append(Sentence(
            index=index,
            raw_text=raw,
            tokens=tuple(tokens),
            vectors=vectors,
            oov_count=len(tokens) - len(found),
            stopword_count=len(all_tokens) - len(tokens),
        ))
    doc = Document(sentences=tuple(sentences), language_tag=language_tag, dimension=dim)
    if not doc.eligible:
        raise NoContentError("no sentence contains an embedded token")
    return doc
