"""Keyword-based selection of Sinophobic posts.

Matching is token-exact (never substring): the default keyword list
separately carries truncations like "chines" and "mainla", which would be
redundant under substring matching. The known "prc tests" false positive
is kept as documented behavior.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import InputError
from .normalizer import NormalizedPost


@dataclass(frozen=True)
class KeywordSet:
    single_tokens: frozenset[str]
    phrases: tuple[tuple[str, ...], ...]

    @classmethod
    def from_terms(cls, terms) -> "KeywordSet":
        singles: set[str] = set()
        phrases: list[tuple[str, ...]] = []
        seen: set[str] = set()
        for term in terms:
            term = term.strip().lower()
            if not term:
                continue
            if term in seen:
                raise InputError(f"duplicate keyword: {term!r}")
            seen.add(term)
            parts = tuple(term.split())
            if len(parts) > 1:
                phrases.append(parts)
            else:
                singles.add(term)
        return cls(single_tokens=frozenset(singles), phrases=tuple(phrases))

    def __len__(self) -> int:
        return len(self.single_tokens) + len(self.phrases)


def load_keywords(path=None) -> KeywordSet:
    """Load a keyword file (one keyword per line), defaulting to the bundled list."""
    if path is None:
        text = resources.files("sinosent.data").joinpath("keywords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return KeywordSet.from_terms(
        line for line in text.splitlines() if line.strip() and not line.startswith("#"))


def matches(post: NormalizedPost, keywords: KeywordSet) -> list[str]:
    """Distinct keywords found in the post (empty list means no match)."""
    found: list[str] = []
    token_set = set(post.tokens)
    for token in sorted(keywords.single_tokens & token_set):
        found.append(token)
    tokens = post.tokens
    for phrase in keywords.phrases:
        n = len(phrase)
        if any(tokens[i:i + n] == phrase for i in range(len(tokens) - n + 1)):
            found.append(" ".join(phrase))
    return found


def filter_corpus(posts, keywords: KeywordSet):
    """Order-preserving subset of matching posts, plus per-keyword hit counts.

    Empty-flagged posts never match.
    """
    kept: list[NormalizedPost] = []
    hits: Counter[str] = Counter()
    matched_by_id: dict[str, list[str]] = {}
    for post in posts:
        if post.empty:
            continue
        found = matches(post, keywords)
        if found:
            kept.append(post)
            matched_by_id[post.post_id] = found
            hits.update(found)
    return kept, hits, matched_by_id
