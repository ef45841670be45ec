"""Dataset-level ROUGE evaluation and the sigma sweep.

Datasets are JSON lines, one object per line::

    {"id": "doc-1", "text": "...", "summaries": ["reference one", "reference two"]}

Each document is summarized, scored against every reference, and the best
reference per metric is kept. Aggregates are plain means over the documents
that were summarized; documents that fail are reported as skipped rows.
"""

from __future__ import annotations

import json
import logging
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import WgssError
from .pipeline import PreparedDocument, Sigma, Summarizer
from .rouge import METRICS, score_summary

logger = logging.getLogger(__name__)

SWEEP_POINTS = 63
SWEEP_MIN = 1e-12
SWEEP_MAX = 10.0


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    text: str
    summaries: tuple[str, ...]


def parse_dataset(lines: Iterable[str]) -> tuple[list[DatasetRecord], int]:
    """Parse JSONL lines; returns (records, number of malformed lines)."""
    records, malformed = [], 0
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            doc_id, text, summaries = obj["id"], obj["text"], obj["summaries"]
            if not isinstance(doc_id, (str, int)) or not isinstance(text, str):
                raise TypeError("id must be a string and text a string")
            if isinstance(summaries, str) or not all(isinstance(s, str) for s in summaries):
                raise TypeError("summaries must be a list of strings")
            if not summaries:
                raise ValueError("summaries is empty")
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            logger.warning("dataset line %d skipped: %s", lineno, exc)
            malformed += 1
            continue
        records.append(DatasetRecord(str(doc_id), text, tuple(summaries)))
    return records, malformed


def read_dataset(path) -> tuple[list[DatasetRecord], int]:
    with open(path, encoding="utf-8") as fh:
        return parse_dataset(fh)


def write_dataset(records: Iterable[DatasetRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps({"id": r.id, "text": r.text, "summaries": list(r.summaries)},
                                ensure_ascii=False) + "\n")


def _mean_scores(rows: Sequence[dict]) -> dict:
    out = {}
    for metric in METRICS:
        out[metric] = {
            key: statistics.fmean(row[metric][key] for row in rows) if rows else 0.0
            for key in ("precision", "recall", "f1")
        }
    return out


def aggregate(rows: Sequence[dict], malformed: int = 0) -> dict:
    ok = [r for r in rows if r["status"] == "ok"]
    agg = {"documents": len(ok), "skipped": len(rows) - len(ok), "malformed_lines": malformed}
    agg.update(_mean_scores(ok))
    return agg


def _score_row(record: DatasetRecord, summary: str, extra: dict | None = None) -> dict:
    scores = score_summary(summary, record.summaries)
    row = {"id": record.id, "status": "ok", "summary": summary}
    for metric in METRICS:
        row[metric] = scores[metric].as_dict()
    if extra:
        row.update(extra)
    return row


def _skipped_row(record: DatasetRecord, exc: Exception) -> dict:
    return {"id": record.id, "status": "skipped", "reason": f"{type(exc).__name__}: {exc}"}


def _map(fn: Callable, items: Sequence, jobs: int, progress: bool) -> list:
    total = len(items)

    def tick(i):
        if progress:
            print(f"[{i + 1}/{total}]", file=sys.stderr)

    if jobs <= 1:
        out = []
        for i, item in enumerate(items):
            out.append(fn(item))
            tick(i)
        return out
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        out = []
        for i, result in enumerate(pool.map(fn, items)):
            out.append(result)
            tick(i)
        return out


def evaluate_dataset(records: Sequence[DatasetRecord], summarizer: Summarizer, jobs: int = 1,
                     malformed: int = 0, progress: bool = False) -> dict:
    """Summarize and score every record; returns a JSON-serializable report.

    Results do not depend on ``jobs``: documents are independent and rows keep
    input order.
    """
    if not records:
        raise ValueError("dataset is empty")

    def run(record: DatasetRecord) -> dict:
        try:
            result = summarizer.summarize(record.text)
        except (WgssError, ValueError, np.linalg.LinAlgError) as exc:
            return _skipped_row(record, exc)
        return _score_row(record, result.summary, {"diagnostics": result.diagnostics.as_dict()})

    rows = _map(run, list(records), jobs, progress)
    cfg = summarizer.config
    return {
        "config": {
            "language": cfg.language_tag,
            "sigma": cfg.sigma,
            "ratio": cfg.proportion,
            "kernel": cfg.kernel,
            "strategy": cfg.strategy,
            "seed": cfg.seed,
        },
        "documents": rows,
        "aggregate": aggregate(rows, malformed),
    }


def default_sigma_grid(points: int = SWEEP_POINTS, low: float = SWEEP_MIN, high: float = SWEEP_MAX) -> np.ndarray:
    """Log-spaced sigma values from ``low`` to ``high`` inclusive."""
    return np.logspace(np.log10(low), np.log10(high), points)


def sweep_sigma(records: Sequence[DatasetRecord], summarizer: Summarizer,
                sigmas: Iterable[Sigma] | None = None, jobs: int = 1,
                progress: bool = False) -> list[dict]:
    """Mean ROUGE per sigma value.

    Distances are computed once per document and reused for every sigma.
    """
    sigmas = list(default_sigma_grid() if sigmas is None else sigmas)

    def prepare(record):
        try:
            return summarizer.prepare(record.text)
        except (WgssError, ValueError) as exc:
            return exc

    prepared = _map(prepare, list(records), jobs, progress)
    results = []
    for sigma in sigmas:
        sigma = sigma if sigma == "auto" else float(sigma)

        def run(pair: tuple[DatasetRecord, PreparedDocument | Exception]) -> dict:
            record, prep = pair
            if isinstance(prep, Exception):
                return _skipped_row(record, prep)
            try:
                result = summarizer.summarize_prepared(prep, sigma=sigma)
            except (WgssError, ValueError, np.linalg.LinAlgError) as exc:
                return _skipped_row(record, exc)
            return _score_row(record, result.summary)

        rows = _map(run, list(zip(records, prepared)), jobs, False)
        agg = aggregate(rows)
        results.append({"sigma": sigma, **agg})
    return results


def format_sweep_tsv(results: Sequence[dict]) -> str:
    lines = ["sigma\trouge1_f1\trouge2_f1\trougeL_f1\trouge1_recall\trouge2_recall\trougeL_recall\tdocuments"]
    for r in results:
        sigma = r["sigma"] if r["sigma"] == "auto" else f"{r['sigma']:.6g}"
        lines.append("\t".join([
            sigma,
            *(f"{r[m]['f1']:.6f}" for m in METRICS),
            *(f"{r[m]['recall']:.6f}" for m in METRICS),
            str(r["documents"]),
        ]))
    return "\n".join(lines) + "\n"


def format_report_tsv(report: dict) -> str:
    header = ["id", "status"] + [f"{m}_{k}" for m in METRICS for k in ("precision", "recall", "f1")]
    lines = ["\t".join(header)]
    for row in report["documents"]:
        if row["status"] == "ok":
            vals = [f"{row[m][k]:.6f}" for m in METRICS for k in ("precision", "recall", "f1")]
        else:
            vals = [""] * (len(header) - 2)
        lines.append("\t".join([row["id"], row["status"], *vals]))
    return "\n".join(lines) + "\n"


def format_aggregate_table(agg: dict) -> str:
    lines = [f"{'metric':<8} {'P':>8} {'R':>8} {'F':>8}"]
    for m in METRICS:
        s = agg[m]
        lines.append(f"{m:<8} {s['precision']:>8.4f} {s['recall']:>8.4f} {s['f1']:>8.4f}")
    lines.append(f"documents={agg['documents']} skipped={agg['skipped']} "
                 f"malformed_lines={agg.get('malformed_lines', 0)}")
    return "\n".join(lines)
