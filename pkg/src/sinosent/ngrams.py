"""Bigram/trigram frequency analysis with stopword removal.

Windows never cross post boundaries; ties in top-k are broken
lexicographically so output ordering is deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import UsageError
from .normalizer import NormalizedPost


def load_stopwords(path=None) -> frozenset[str]:
    if path is None:
        text = resources.files("sinosent.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip() and not w.startswith("#"))


@dataclass
class NgramTable:
    n: int
    entries: Counter = field(default_factory=Counter)
    slice: str | None = None  # e.g. "country=AU" or "month=2021-07"


def content_tokens(post: NormalizedPost, stopwords: frozenset[str]) -> list[str]:
    """Post tokens with stopwords removed, order preserved."""
    return [t for t in post.tokens if t not in stopwords]


def extract_ngrams(posts, n: int, stopwords: frozenset[str], slice: str | None = None) -> NgramTable:
    """Count all length-n sliding windows over each post's content tokens."""
    if n not in (2, 3):
        raise UsageError(f"n must be 2 or 3, got {n}")
    table = NgramTable(n=n, slice=slice)
    for post in posts:
        tokens = content_tokens(post, stopwords)
        for i in range(len(tokens) - n + 1):
            table.entries[tuple(tokens[i:i + n])] += 1
    return table


def top_k(table: NgramTable, k: int) -> list[tuple[tuple[str, ...], int]]:
    """At most k entries, by count descending then joined tuple ascending."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    ordered = sorted(table.entries.items(), key=lambda kv: (-kv[1], " ".join(kv[0])))
    return ordered[:k]
