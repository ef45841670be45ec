"""Pre-trained word vectors.

Reads the FastText-style text format (``<count> <dim>`` header followed by
``<word> <v1> ... <vdim>`` lines) and a small binary cache format for fast
reloads. Words are stored exactly as they appear in the file: no case folding,
no stemming, and no subword synthesis for unknown words.

>>> table = load_vectors("cc.bn.300.vec", vocabulary_filter={"বাংলা"})  # doctest: +SKIP
>>> table.lookup("বাংলা").shape  # doctest: +SKIP
(300,)
"""

from __future__ import annotations

import json
import logging
import math
import os
import struct
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import EmbeddingFormatError, EmptyTableError

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"WGSSEMB\x00"
CACHE_VERSION = 1


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    """Immutable word -> vector map backed by one float64 matrix."""

    dimension: int
    words: tuple[str, ...]
    matrix: np.ndarray
    source_id: str = ""
    skipped: int = 0
    _index: Mapping[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        if matrix.ndim != 2 or matrix.shape != (len(self.words), self.dimension):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match "
                f"{len(self.words)} words x {self.dimension} dims"
            )
        if not np.all(np.isfinite(matrix)):
            raise ValueError("embedding vectors must be finite")
        matrix.setflags(write=False)
        index = {}
        for i, word in enumerate(self.words):
            if not word:
                raise ValueError("empty word form")
            if word in index:
                raise ValueError(f"duplicate word form {word!r}")
            index[word] = i
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def lookup(self, word: str) -> np.ndarray | None:
        """Return the read-only vector for ``word``, or None if out of vocabulary."""
        i = self._index.get(word)
        if i is None:
            return None
        return self.matrix[i]

    @classmethod
    def from_mapping(cls, vectors: Mapping[str, Iterable[float]], source_id: str = "") -> EmbeddingTable:
        words = tuple(vectors)
        if not words:
            raise EmptyTableError("no vectors supplied")
        matrix = np.array([np.asarray(vectors[w], dtype=np.float64) for w in words])
        return cls(dimension=matrix.shape[1], words=words, matrix=matrix, source_id=source_id)


def lookup(table: EmbeddingTable, word: str) -> np.ndarray | None:
    return table.lookup(word)


def _parse_header(line: str, path) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"{path}: header must be '<count> <dimension>', got {line.strip()!r}")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingFormatError(f"{path}: non-integer header {line.strip()!r}") from None
    if count < 0 or dim <= 0:
        raise EmbeddingFormatError(f"{path}: invalid header values count={count} dimension={dim}")
    return count, dim


def _read_text(path, vocabulary_filter) -> EmbeddingTable:
    words: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    skipped = 0
    with open(path, encoding="utf-8", errors="strict") as fh:
        header = fh.readline()
        if not header:
            raise EmbeddingFormatError(f"{path}: empty file, missing header")
        _, dim = _parse_header(header, path)
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            word = parts[0]
            if vocabulary_filter is not None and word not in vocabulary_filter:
                continue
            if len(parts) != dim + 1 or word in seen:
                skipped += 1
                continue
            try:
                values = [float(v) for v in parts[1:]]
            except ValueError:
                skipped += 1
                continue
            if not all(math.isfinite(v) for v in values):
                skipped += 1
                continue
            seen.add(word)
            words.append(word)
            rows.append(values)
    if skipped:
        logger.warning("%s: skipped %d malformed or duplicate vector lines", path, skipped)
    if not words:
        raise EmptyTableError(f"{path}: no usable vectors after filtering")
    matrix = np.array(rows, dtype=np.float64).reshape(len(words), dim)
    return EmbeddingTable(dimension=dim, words=tuple(words), matrix=matrix,
                          source_id=os.fspath(path), skipped=skipped)


def _is_cache(path) -> bool:
    with open(path, "rb") as fh:
        return fh.read(len(CACHE_MAGIC)) == CACHE_MAGIC


def save_cache(table: EmbeddingTable, path) -> None:
    """Write ``table`` in the binary cache format.

    Layout: 8-byte magic, little-endian uint64 header length, UTF-8 JSON header
    (version, dimension, words, source_id), then the float64 matrix in C order.
    """
    header = json.dumps({
        "version": CACHE_VERSION,
        "dimension": table.dimension,
        "source_id": table.source_id,
        "words": list(table.words),
    }, ensure_ascii=False).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", len(header)))
        fh.write(header)
        fh.write(np.ascontiguousarray(table.matrix, dtype="<f8").tobytes())


def _read_cache(path, vocabulary_filter) -> EmbeddingTable:
    with open(path, "rb") as fh:
        fh.read(len(CACHE_MAGIC))
        raw_len = fh.read(8)
        if len(raw_len) != 8:
            raise EmbeddingFormatError(f"{path}: truncated cache header")
        (header_len,) = struct.unpack("<Q", raw_len)
        try:
            header = json.loads(fh.read(header_len).decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise EmbeddingFormatError(f"{path}: corrupt cache header") from exc
        if header.get("version") != CACHE_VERSION:
            raise EmbeddingFormatError(f"{path}: unsupported cache version {header.get('version')!r}")
        dim = int(header["dimension"])
        words = header["words"]
        data = np.frombuffer(fh.read(), dtype="<f8")
    if data.size != len(words) * dim:
        raise EmbeddingFormatError(f"{path}: cache payload size mismatch")
    matrix = data.reshape(len(words), dim)
    if vocabulary_filter is not None:
        keep = [i for i, w in enumerate(words) if w in vocabulary_filter]
        words = [words[i] for i in keep]
        matrix = matrix[keep]
    if not words:
        raise EmptyTableError(f"{path}: no usable vectors after filtering")
    return EmbeddingTable(dimension=dim, words=tuple(words), matrix=matrix,
                          source_id=header.get("source_id") or os.fspath(path))


def load_vectors(path, vocabulary_filter: Iterable[str] | None = None) -> EmbeddingTable:
    """Load word vectors from a text ``.vec`` file or a binary cache.

    Only words in ``vocabulary_filter`` are kept when it is given. Text lines
    with the wrong component count, unparsable or non-finite numbers, or a word
    already seen are skipped; the count is logged and kept in
    ``EmbeddingTable.skipped``.

    Raises ``OSError`` if the file cannot be read, ``EmbeddingFormatError`` for
    a bad header and ``EmptyTableError`` if nothing usable remains.
    """
    if vocabulary_filter is not None and not isinstance(vocabulary_filter, (set, frozenset)):
        vocabulary_filter = set(vocabulary_filter)
    if _is_cache(path):
        return _read_cache(path, vocabulary_filter)
    try:
        return _read_text(path, vocabulary_filter)
    except UnicodeDecodeError as exc:
        raise EmbeddingFormatError(f"{path}: not valid UTF-8 ({exc.reason})") from exc
