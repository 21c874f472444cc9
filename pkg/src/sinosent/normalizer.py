"""Stage-1 text cleaning.

Fixed pipeline order: strip mentions/URLs/hashtag marks, map emojis to
words, expand contractions, lowercase, turn punctuation into spaces,
tokenize, expand abbreviations. Contractions must be expanded before
punctuation stripping or the apostrophes vanish first and "don't" would
collapse to "dont".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import RawPost
from .errors import InputError

_MENTION_RE = re.compile(r"@\w+")
_URL_RE = re.compile(r"(?:https?://\S+|\bt\.co/\S+|\bwww\.\S+)")

# Typographic punctuation folded to ASCII before non-ASCII removal, so
# curly-quote contractions still expand.
_UNICODE_PUNCT = {
    "’": "'", "‘": "'", "“": '"', "”": '"',
    "–": "-", "—": "-", " ": " ",
}


@dataclass
class SubstitutionTable:
    """Contraction, abbreviation and emoji replacement tables."""

    contractions: dict[str, str]
    abbreviations: dict[str, str]
    emojis: dict[str, str]
    _contraction_re: re.Pattern = field(init=False, repr=False)

    def __post_init__(self):
        for table in (self.contractions, self.abbreviations, self.emojis):
            for value in table.values():
                if value != value.lower():
                    raise InputError(f"expansion not lowercase: {value!r}")
        # longest key first so "i'll've" wins over "i'll"
        keys = sorted(self.contractions, key=len, reverse=True)
        pattern = "|".join(re.escape(k) for k in keys) or r"(?!x)x"
        self._contraction_re = re.compile(rf"\b(?:{pattern})\b", re.IGNORECASE)


def _read_pairs(path, default_name: str) -> dict[str, str]:
    if path is None:
        text = resources.files("sinosent.data").joinpath(default_name).read_text("utf-8")
        source = default_name
    else:
        text = Path(path).read_text(encoding="utf-8")
        source = str(path)
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        if "\t" not in line:
            raise InputError(f"{source} line {lineno}: expected key<TAB>expansion")
        key, _, value = line.partition("\t")
        pairs[key] = value.strip()
    return pairs


def load_table(contractions_path=None, abbreviations_path=None, emojis_path=None) -> SubstitutionTable:
    """Load substitution tables, falling back to the bundled defaults."""
    return SubstitutionTable(
        contractions=_read_pairs(contractions_path, "contractions.tsv"),
        abbreviations=_read_pairs(abbreviations_path, "abbreviations.tsv"),
        emojis=_read_pairs(emojis_path, "emojis.tsv"),
    )


@dataclass(frozen=True)
class NormalizedPost:
    """Cleaned lowercase token-joined text with provenance to the raw post."""

    post_id: str
    text: str
    tokens: tuple[str, ...]

    @property
    def empty(self) -> bool:
        return self.text == ""


def strip_entities(text: str) -> str:
    """Delete @mentions and URLs; drop '#' while keeping the hashtag word."""
    text = _URL_RE.sub("", text)
    text = _MENTION_RE.sub("", text)
    return text.replace("#", "")


def map_emojis(text: str, table: SubstitutionTable) -> str:
    """Replace mapped emoji with ' word '; delete all other non-ASCII."""
    for char, ascii_char in _UNICODE_PUNCT.items():
        text = text.replace(char, ascii_char)
    for emoji, word in sorted(table.emojis.items(), key=lambda kv: len(kv[0]), reverse=True):
        text = text.replace(emoji, f" {word} ")
    return "".join(c for c in text if ord(c) < 128)


def expand_contractions(text: str, table: SubstitutionTable) -> str:
    """Expand contraction keys case-insensitively, longest match first."""
    for char in ("’", "‘"):
        text = text.replace(char, "'")
    return table._contraction_re.sub(
        lambda m: table.contractions[m.group(0).lower()], text)


def expand_abbreviations(tokens, table: SubstitutionTable) -> list[str]:
    """Replace exact-token matches, splicing multi-word expansions in place."""
    out: list[str] = []
    for token in tokens:
        expansion = table.abbreviations.get(token)
        if expansion is None:
            out.append(token)
        else:
            out.extend(expansion.split())
    return out


def _punct_to_space(text: str) -> str:
    # Non-alphanumeric ASCII becomes a space, except a mark sandwiched
    # between an alphanumeric and a digit ("covid-19"), which must survive
    # until abbreviation lookup.
    chars = []
    for i, c in enumerate(text):
        if c.isalnum() or c == " ":
            chars.append(c)
        elif (0 < i < len(text) - 1 and text[i - 1].isalnum() and text[i + 1].isdigit()):
            chars.append(c)
        else:
            chars.append(" ")
    return "".join(chars)


def _purge_residual_punct(tokens) -> list[str]:
    # after abbreviation lookup, split any surviving punctuation
    out: list[str] = []
    for token in tokens:
        cleaned = "".join(c if c.isalnum() else " " for c in token)
        out.extend(cleaned.split())
    return out


def normalize_text(text: str, table: SubstitutionTable) -> str:
    """Run the full cleaning pipeline on one string."""
    text = strip_entities(text)
    text = map_emojis(text, table)
    text = expand_contractions(text, table)
    text = text.lower()
    text = _punct_to_space(text)
    tokens = expand_abbreviations(text.split(), table)
    tokens = _purge_residual_punct(tokens)
    return " ".join(tokens)


def normalize(post: RawPost, table: SubstitutionTable) -> NormalizedPost:
    """Normalize one post; empty results are carried (flagged), not dropped."""
    text = normalize_text(post.text, table)
    return NormalizedPost(post_id=post.id, text=text, tokens=tuple(text.split()))
