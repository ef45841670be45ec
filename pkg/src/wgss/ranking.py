"""TF-IDF sentence scoring and per-cluster representative selection."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .clustering import ClusterAssignment
from .errors import ResourceError
from .preprocess import Document, Sentence, profile_for, tokenize_and_filter

STRATEGIES = ("tfidf", "lead")


@dataclass(frozen=True, eq=False)
class IdfTable:
    document_count: int
    doc_frequency: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.document_count < 1:
            raise ValueError("document_count must be positive")
        for word, df in self.doc_frequency.items():
            if not 0 <= df <= self.document_count:
                raise ValueError(f"doc frequency {df} for {word!r} outside [0, {self.document_count}]")

    def idf(self, word: str) -> float:
        """Smoothed ``ln((1 + |C|) / (1 + df)) + 1``; always >= 1."""
        df = self.doc_frequency.get(word, 0)
        return math.log((1 + self.document_count) / (1 + df)) + 1.0

    @classmethod
    def from_token_lists(cls, documents: Iterable[Iterable[str]]) -> IdfTable:
        df: Counter[str] = Counter()
        count = 0
        for tokens in documents:
            df.update(set(tokens))
            count += 1
        if count == 0:
            raise ResourceError("IDF corpus contains no documents")
        return cls(document_count=count, doc_frequency=dict(df))

    @classmethod
    def from_texts(cls, texts: Iterable[str], stopwords: Iterable[str] = ()) -> IdfTable:
        stopwords = frozenset(stopwords)
        return cls.from_token_lists(tokenize_and_filter(t, stopwords) for t in texts)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"#docs {self.document_count}\n")
            for word in sorted(self.doc_frequency):
                fh.write(f"{word}\t{self.doc_frequency[word]}\n")

    @classmethod
    def load(cls, path) -> IdfTable:
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().split()
            if len(header) != 2 or header[0] != "#docs":
                raise ResourceError(f"{path}: first line must be '#docs <count>'")
            try:
                count = int(header[1])
                df = {}
                for lineno, line in enumerate(fh, start=2):
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    word, _, value = line.rpartition("\t")
                    if not word:
                        raise ResourceError(f"{path}:{lineno}: expected '<word>\\t<count>'")
                    df[word] = int(value)
                return cls(document_count=count, doc_frequency=df)
            except ValueError as exc:
                raise ResourceError(f"{path}: {exc}") from exc


def idf(table: IdfTable, word: str) -> float:
    return table.idf(word)


def build_idf(corpus_paths: Iterable, language_tag: str, stopwords: Iterable[str]) -> IdfTable:
    """Document frequencies over ``corpus_paths``, one document per file.

    Unreadable files are skipped; an empty result is an error.
    """
    profile_for(language_tag)
    stopwords = frozenset(stopwords)
    docs = []
    for path in corpus_paths:
        try:
            with open(path, encoding="utf-8") as fh:
                docs.append(tokenize_and_filter(fh.read(), stopwords))
        except (OSError, UnicodeDecodeError):
            continue
    if not docs:
        raise ResourceError("no readable corpus documents")
    return IdfTable.from_token_lists(docs)


def term_frequencies(doc: Document) -> Counter[str]:
    """Occurrence count of every filtered token across the whole document."""
    tf: Counter[str] = Counter()
    for sentence in doc.sentences:
        tf.update(sentence.tokens)
    return tf


def tfidf_sentence_score(sentence: Sentence, doc: Document, table: IdfTable,
                         tf: Mapping[str, int] | None = None) -> float:
    if tf is None:
        tf = term_frequencies(doc)
    return math.fsum(tf[w] * table.idf(w) for w in sentence.tokens)


@dataclass(frozen=True)
class SummarySelection:
    chosen_indexes: tuple[int, ...]
    strategy: str = "tfidf"


def select_representatives(clusters: ClusterAssignment, doc: Document, table: IdfTable,
                           strategy: str = "tfidf") -> SummarySelection:
    """One sentence per cluster: the TF-IDF argmax (ties -> earliest) or the earliest."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    chosen = []
    if strategy == "lead":
        chosen = [min(members) for members in clusters.clusters()]
    else:
        tf = term_frequencies(doc)
        by_index = {s.index: s for s in doc.sentences}
        for members in clusters.clusters():
            scored = [(tfidf_sentence_score(by_index[i], doc, table, tf), -i) for i in members]
            chosen.append(-max(scored)[1])
    return SummarySelection(chosen_indexes=tuple(sorted(chosen)), strategy=strategy)


def assemble_summary(selection: SummarySelection | Iterable[int], doc: Document) -> str:
    indexes = selection.chosen_indexes if isinstance(selection, SummarySelection) else selection
    by_index = {s.index: s for s in doc.sentences}
    return " ".join(by_index[i].raw_text for i in sorted(indexes))
