"""Command-line entry point.

Usage: sinosent <subcommand> [--config config.json] [overrides]

Subcommands mirror the pipeline stages so partial reruns are cheap:
normalize, filter, ngram, classify, evaluate, score, aggregate, report.
Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 remote
protocol error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline
from .config import load_config
from .errors import SinosentError


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--posts", help="input posts file (csv or jsonl)")
    parser.add_argument("--posts-format", dest="posts_format", choices=["csv", "jsonl"])
    parser.add_argument("--cases", help="wide cumulative COVID cases CSV")
    parser.add_argument("--keywords", help="keyword file, one per line")
    parser.add_argument("--contractions")
    parser.add_argument("--abbreviations")
    parser.add_argument("--emojis")
    parser.add_argument("--stopwords")
    parser.add_argument("--sentiment-lexicon", dest="sentiment_lexicon")
    parser.add_argument("--polarity-lexicon", dest="polarity_lexicon")
    parser.add_argument("--weights", help="JSON label-weight override file")
    parser.add_argument("--backend", choices=["lexicon", "remote"])
    parser.add_argument("--endpoint", help="remote classifier base URL")
    parser.add_argument("--threshold", type=float)
    parser.add_argument("--batch-size", dest="batch_size", type=int)
    parser.add_argument("--countries", nargs="+", help="country code filter")
    parser.add_argument("--exclude-labels", dest="exclude_labels", nargs="+")
    parser.add_argument("--top-k", dest="top_k", type=int)
    parser.add_argument("--output-dir", dest="output_dir")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sinosent", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in (
        ("normalize", "ingest, deduplicate and normalize posts"),
        ("filter", "keep posts matching the keyword list"),
        ("ngram", "top-k bigram/trigram tables"),
        ("classify", "multi-label sentiment scores and labels"),
        ("evaluate", "metrics report from a labeled test file"),
        ("score", "polarity scores per post"),
        ("aggregate", "monthly series, shares, co-occurrence, histogram"),
        ("report", "full pipeline plus artifact manifest"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        if name in ("filter", "ngram", "classify", "evaluate", "score", "aggregate"):
            p.add_argument("--input", required=True, help="previous stage output")
        if name == "report":
            p.add_argument("--svg", action="store_true",
                           help="also render basic smoke-check charts")
    return parser


_CONFIG_KEYS = (
    "posts", "posts_format", "cases", "keywords", "contractions", "abbreviations",
    "emojis", "stopwords", "sentiment_lexicon", "polarity_lexicon", "weights",
    "backend", "endpoint", "threshold", "batch_size", "countries",
    "exclude_labels", "top_k", "output_dir",
)


def run(argv=None) -> dict:
    args = build_parser().parse_args(argv)
    overrides = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    config = load_config(args.config, overrides)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if args.subcommand == "normalize":
        return pipeline.run_normalize(config, out_dir / "normalized.jsonl")
    if args.subcommand == "filter":
        return pipeline.run_filter(config, args.input, out_dir / "filtered.jsonl",
                                   out_dir / "keyword_hits.csv")
    if args.subcommand == "ngram":
        paths = pipeline.run_ngram(config, args.input, out_dir)
        return {"files": [str(p) for p in paths]}
    if args.subcommand == "classify":
        return pipeline.run_classify(config, args.input, out_dir / "classified.jsonl")
    if args.subcommand == "evaluate":
        return pipeline.run_evaluate(config, args.input, out_dir / "eval_report.json")
    if args.subcommand == "score":
        return pipeline.run_score(config, args.input, out_dir / "scored.jsonl")
    if args.subcommand == "aggregate":
        entries = pipeline.run_aggregate(config, args.input, out_dir)
        return {"artifacts": len(entries)}
    manifest = pipeline.run_report(config, out_dir, svg=args.svg)
    return {"manifest": str(manifest)}


def main(argv=None) -> int:
    try:
        stats = run(argv)
    except SinosentError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    print(json.dumps(stats, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
