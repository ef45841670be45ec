"""ROUGE-1, ROUGE-2 and ROUGE-L (longest common subsequence) scoring.

Texts are tokenized with the same Unicode word tokenizer as the summarizer but
without stop-word removal or stemming.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

from .preprocess import tokenize

METRICS = ("rouge1", "rouge2", "rougeL")


@dataclass(frozen=True)
class RougeScore:
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0

    @classmethod
    def from_counts(cls, overlap: int, candidate_total: int, reference_total: int) -> RougeScore:
        p = overlap / candidate_total if candidate_total else 0.0
        r = overlap / reference_total if reference_total else 0.0
        f = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(p, r, f)

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int = 1) -> RougeScore:
    """Clipped n-gram overlap between two token sequences."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand, ref = ngrams(candidate, n), ngrams(reference, n)
    overlap = sum((cand & ref).values())
    return RougeScore.from_counts(overlap, sum(cand.values()), sum(ref.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_lcs(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    return RougeScore.from_counts(lcs_length(candidate, reference), len(candidate), len(reference))


def score_tokens(candidate: Sequence[str], reference: Sequence[str]) -> dict[str, RougeScore]:
    return {
        "rouge1": rouge_n(candidate, reference, 1),
        "rouge2": rouge_n(candidate, reference, 2),
        "rougeL": rouge_lcs(candidate, reference),
    }


def score_summary(candidate: str, references: Sequence[str]) -> dict[str, RougeScore]:
    """Best score per metric over ``references`` (highest F1, then recall, then precision)."""
    if isinstance(references, str):
        references = [references]
    if not references:
        raise ValueError("at least one reference summary is required")
    cand = tokenize(candidate)
    best: dict[str, RougeScore] = {}
    for ref in references:
        for metric, score in score_tokens(cand, tokenize(ref)).items():
            current = best.get(metric)
            if current is None or (score.f1, score.recall, score.precision) > (
                    current.f1, current.recall, current.precision):
                best[metric] = score
    return best
