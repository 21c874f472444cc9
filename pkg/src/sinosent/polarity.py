"""Polarity scoring.

The custom score sums the weights of a post's assigned labels and divides
by the number of sentiment categories (10); the divisor is what makes the
published sample scores come out exactly. The maximal all-negative label
set would reach -1.2, so the result is clamped to [-1, 1]. The lexicon
scorer is a generic approximation of off-the-shelf polarity tools.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .classify import LABELS, NUM_LABELS, LabelVector
from .errors import InputError

DEFAULT_WEIGHTS = {
    "optimistic": 3,
    "thankful": 2,
    "empathetic": 0,
    "pessimistic": -3,
    "anxious": -2,
    "sad": -2,
    "annoyed": -1,
    "denial": -4,
    "official_report": 0,
    "joking": 1,
}


@dataclass(frozen=True)
class PolarityWeights:
    """Signed integer weight per sentiment label."""

    by_label: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))

    def __post_init__(self):
        missing = set(LABELS) - set(self.by_label)
        extra = set(self.by_label) - set(LABELS)
        if missing or extra:
            raise InputError(f"bad weight labels: missing {sorted(missing)}, extra {sorted(extra)}")

    @classmethod
    def load(cls, path) -> "PolarityWeights":
        """Read a JSON override file mapping label name -> integer weight."""
        overrides = json.loads(Path(path).read_text(encoding="utf-8"))
        merged = dict(DEFAULT_WEIGHTS)
        for name, value in overrides.items():
            if name not in LABELS:
                raise InputError(f"unknown label in weights file: {name!r}")
            merged[name] = int(value)
        return cls(merged)


def custom_polarity(labels: LabelVector, weights: PolarityWeights | None = None) -> float:
    """clamp(sum of set-label weights / 10, -1, 1)."""
    w = weights or PolarityWeights()
    total = sum(w.by_label[LABELS[i]] for i, bit in enumerate(labels.bits) if bit)
    return max(-1.0, min(1.0, total / NUM_LABELS))


def load_polarity_lexicon(path=None) -> dict[str, float]:
    """token -> valence in [-1, 1]; file format token<TAB>value."""
    if path is None:
        text = resources.files("sinosent.data").joinpath("polarity_lexicon.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    lexicon: dict[str, float] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        token, _, value = line.partition("\t")
        valence = float(value)
        if not -1.0 <= valence <= 1.0:
            raise InputError(f"polarity lexicon line {lineno}: value {valence} outside [-1, 1]")
        lexicon[token] = valence
    return lexicon


def lexicon_polarity(text: str, polarity_lexicon: dict[str, float]) -> float:
    """Mean valence of matched tokens; 0.0 when nothing matches."""
    values = [polarity_lexicon[t] for t in text.split() if t in polarity_lexicon]
    return sum(values) / len(values) if values else 0.0
