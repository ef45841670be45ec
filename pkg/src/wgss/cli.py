"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 resource error, 3 pipeline failure.
Standard output carries only the artifact (summary, report, table); messages
go to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .embeddings import load_vectors, save_cache
from .errors import ResourceError, WgssError
from .evaluation import (
    default_sigma_grid,
    evaluate_dataset,
    format_aggregate_table,
    format_report_tsv,
    format_sweep_tsv,
    parse_dataset,
    read_dataset,
    sweep_sigma,
)
from .pipeline import PipelineConfig, Summarizer
from .preprocess import LANGUAGES, default_stopwords, document_vocabulary, load_stopwords
from .ranking import IdfTable, build_idf
from .similarity import DEFAULT_SIGMA

EXIT_USAGE, EXIT_RESOURCE, EXIT_PIPELINE = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sigma(value: str):
    if value == "auto":
        return value
    try:
        sigma = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive number or 'auto', got {value!r}") from None
    if not sigma > 0 or sigma == float("inf"):
        raise argparse.ArgumentTypeError(f"sigma must be positive, got {value!r}")
    return sigma


def _ratio(value: str) -> float:
    try:
        ratio = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {value!r}") from None
    if not 0 < ratio < 1:
        raise argparse.ArgumentTypeError(f"ratio must lie strictly between 0 and 1, got {value}")
    return ratio


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--embeddings", required=True, help="word vectors (.vec text or embed-cache output)")
    p.add_argument("--stopwords", help="stop-word file; defaults to the list shipped for --lang")
    p.add_argument("--idf", help="IDF table written by build-idf; without it all IDF values are equal")
    p.add_argument("--sigma", type=_sigma, default=DEFAULT_SIGMA, help="Gaussian sigma or 'auto' (default 5e-11)")
    p.add_argument("--ratio", type=_ratio, default=0.2, help="summary proportion p in (0, 1)")
    p.add_argument("--kernel", choices=("wgss", "average"), default="wgss")
    p.add_argument("--strategy", choices=("tfidf", "lead"), default="tfidf")
    p.add_argument("--lang", choices=LANGUAGES, default="bn")
    p.add_argument("--seed", type=int, default=0)


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        language_tag=args.lang,
        embedding_path=args.embeddings,
        stopword_path=args.stopwords,
        idf_path=args.idf,
        sigma=args.sigma,
        proportion=args.ratio,
        kernel=args.kernel,
        strategy=args.strategy,
        seed=args.seed,
    )


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def cmd_summarize(args) -> int:
    text = _read_text(args.input)
    config = _config(args)
    summarizer = Summarizer.from_config(config, texts=[text])
    result = summarizer.summarize(text)
    _write(args.out, result.summary + "\n")
    if args.diag:
        Path(args.diag).write_text(json.dumps(result.diagnostics.as_dict(), ensure_ascii=False, indent=2) + "\n",
                                   encoding="utf-8")
    return 0


def _load_dataset(path: str):
    records, malformed = read_dataset(path)
    if not records:
        raise ResourceError(f"{path}: no valid dataset records")
    if malformed:
        print(f"{path}: skipped {malformed} malformed line(s)", file=sys.stderr)
    return records, malformed


def cmd_evaluate(args) -> int:
    records, malformed = _load_dataset(args.dataset)
    summarizer = Summarizer.from_config(_config(args), texts=[r.text for r in records])
    report = evaluate_dataset(records, summarizer, jobs=args.jobs, malformed=malformed, progress=True)
    _write(args.out, json.dumps(report, ensure_ascii=False, indent=2) + "\n")
    if args.tsv:
        Path(args.tsv).write_text(format_report_tsv(report), encoding="utf-8")
    print(format_aggregate_table(report["aggregate"]), file=sys.stderr)
    return 0


def cmd_sweep_sigma(args) -> int:
    records, _ = _load_dataset(args.dataset)
    summarizer = Summarizer.from_config(_config(args), texts=[r.text for r in records])
    if args.sigmas:
        grid = args.sigmas
    else:
        grid = default_sigma_grid(args.points, args.min, args.max)
    results = sweep_sigma(records, summarizer, grid, jobs=args.jobs)
    _write(args.out, format_sweep_tsv(results))
    return 0


def _corpus_texts(paths):
    for path in paths:
        if str(path).endswith(".jsonl"):
            with open(path, encoding="utf-8") as fh:
                records, _ = parse_dataset(fh)
            for r in records:
                yield r.text
        else:
            yield Path(path).read_text(encoding="utf-8")


def cmd_build_idf(args) -> int:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else default_stopwords(args.lang)
    jsonl = [p for p in args.corpus if p.endswith(".jsonl")]
    if jsonl:
        plain = [p for p in args.corpus if not p.endswith(".jsonl")]
        texts = list(_corpus_texts(jsonl)) + list(_corpus_texts(plain))
        table = IdfTable.from_texts(texts, stopwords)
    else:
        table = build_idf(args.corpus, args.lang, stopwords)
    table.save(args.out)
    print(f"{args.out}: {table.document_count} documents, {len(table.doc_frequency)} words", file=sys.stderr)
    return 0


def cmd_embed_cache(args) -> int:
    vocabulary = None
    if args.vocab_from:
        stopwords = load_stopwords(args.stopwords) if args.stopwords else default_stopwords(args.lang)
        vocabulary = set()
        for text in _corpus_texts(args.vocab_from):
            if text.strip():
                vocabulary |= document_vocabulary(text, args.lang, stopwords)
    table = load_vectors(args.embeddings, vocabulary_filter=vocabulary)
    save_cache(table, args.out)
    print(f"{args.out}: {len(table)} vectors, dimension {table.dimension}, "
          f"{table.skipped} lines skipped", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wgss", description="Extractive summarization with word-pair Gaussian sentence similarity.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("summarize", help="summarize one document")
    p.add_argument("input", nargs="?", help="input text file (default: standard input)")
    _add_pipeline_flags(p)
    p.add_argument("--out", help="write the summary here instead of standard output")
    p.add_argument("--diag", help="write diagnostics JSON to this file")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="ROUGE evaluation over a JSONL dataset")
    p.add_argument("--dataset", required=True)
    _add_pipeline_flags(p)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--out", help="report JSON path (default: standard output)")
    p.add_argument("--tsv", help="also write per-document rows as TSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep-sigma", help="mean ROUGE over a log-spaced sigma grid")
    p.add_argument("--dataset", required=True)
    _add_pipeline_flags(p)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.add_argument("--points", type=_positive_int, default=63)
    p.add_argument("--min", type=_sigma, default=1e-12)
    p.add_argument("--max", type=_sigma, default=10.0)
    p.add_argument("--sigmas", type=_sigma, nargs="+", help="explicit sigma values instead of a grid")
    p.add_argument("--out", help="TSV path (default: standard output)")
    p.set_defaults(func=cmd_sweep_sigma)

    p = sub.add_parser("build-idf", help="document frequencies over a background corpus")
    p.add_argument("corpus", nargs="+", help="text files (one document each) or .jsonl datasets")
    p.add_argument("--out", required=True)
    p.add_argument("--lang", choices=LANGUAGES, default="bn")
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_build_idf)

    p = sub.add_parser("embed-cache", help="convert (and optionally filter) vectors to the binary cache")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--vocab-from", nargs="+", help="keep only words occurring in these text/.jsonl files")
    p.add_argument("--lang", choices=LANGUAGES, default="bn")
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_embed_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "min", None) == "auto" or getattr(args, "max", None) == "auto":
        parser.error("--min/--max must be numbers")
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ResourceError, OSError, UnicodeDecodeError) as exc:
        print(f"wgss: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except WgssError as exc:
        print(f"wgss: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except ValueError as exc:
        print(f"wgss: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
