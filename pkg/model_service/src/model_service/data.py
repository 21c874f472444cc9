"""Labeled dataset loading: one text column plus ten binary label columns."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .labels import LABELS

_TEXT_COLUMNS = ("tweet", "text")


def _normalize_column(name: str) -> str:
    return name.strip().lower().replace(" ", "_")


@dataclass
class LabeledExample:
    text: str
    labels: list[int]  # ten 0/1 entries in the frozen order


def load_dataset(path: Path) -> list[LabeledExample]:
    """Read a labeled CSV; column names are case/space-insensitive."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset not found: {path}")
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        by_normalized = {_normalize_column(c): c for c in reader.fieldnames}
        text_column = next((by_normalized[c] for c in _TEXT_COLUMNS if c in by_normalized), None)
        if text_column is None:
            raise ValueError(f"{path}: no text column (expected one of {_TEXT_COLUMNS})")
        missing = [label for label in LABELS if label not in by_normalized]
        if missing:
            raise ValueError(f"{path}: missing label columns: {missing}")
        examples = []
        for line_no, row in enumerate(reader, start=2):
            bits = []
            for label in LABELS:
                raw = (row[by_normalized[label]] or "").strip()
                if raw not in ("0", "1"):
                    raise ValueError(f"{path}:{line_no}: label {label!r} must be 0/1, got {raw!r}")
                bits.append(int(raw))
            examples.append(LabeledExample(text=row[text_column], labels=bits))
    if not examples:
        raise ValueError(f"{path}: no data rows")
    return examples
