"""Pipeline configuration: a JSON file with CLI-flag overrides on top."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from datetime import date
from pathlib import Path

from .corpus import DEFAULT_WINDOW, CountryCode
from .errors import UsageError

_PATH_FIELDS = (
    "posts", "cases", "keywords", "contractions", "abbreviations", "emojis",
    "stopwords", "sentiment_lexicon", "polarity_lexicon", "weights",
)


@dataclass
class PipelineConfig:
    posts: str | None = None
    posts_format: str = "csv"
    cases: str | None = None
    keywords: str | None = None
    contractions: str | None = None
    abbreviations: str | None = None
    emojis: str | None = None
    stopwords: str | None = None
    sentiment_lexicon: str | None = None
    polarity_lexicon: str | None = None
    weights: str | None = None
    backend: str = "lexicon"
    endpoint: str | None = None
    threshold: float = 0.5
    batch_size: int = 64
    date_window: tuple[date, date] = DEFAULT_WINDOW
    countries: list[str] | None = None
    exclude_labels: list[str] = field(default_factory=lambda: ["official_report"])
    top_k: int = 15
    output_dir: str = "out"

    def validate(self) -> None:
        if not 0 < self.threshold < 1:
            raise UsageError(f"threshold must be in (0, 1), got {self.threshold}")
        if self.batch_size < 1:
            raise UsageError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.backend not in ("lexicon", "remote"):
            raise UsageError(f"backend must be lexicon or remote, got {self.backend!r}")
        if self.backend == "remote" and not self.endpoint:
            raise UsageError("remote backend requires an endpoint")
        if self.posts_format not in ("csv", "jsonl"):
            raise UsageError(f"posts_format must be csv or jsonl, got {self.posts_format!r}")
        for name in _PATH_FIELDS:
            value = getattr(self, name)
            if value is not None and not Path(value).exists():
                raise UsageError(f"configured {name} file does not exist: {value}")
        if self.countries is not None:
            for code in self.countries:
                try:
                    CountryCode.parse(code)
                except ValueError as exc:
                    raise UsageError(str(exc)) from exc

    def country_filter(self) -> set[CountryCode] | None:
        if self.countries is None:
            return None
        return {CountryCode.parse(c) for c in self.countries}


def load_config(path=None, overrides: dict | None = None) -> PipelineConfig:
    """Build a config from an optional JSON file plus override values."""
    values: dict = {}
    if path is not None:
        try:
            values = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file {path} is not valid JSON: {exc}") from exc
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(values) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    if "date_window" in values:
        try:
            start, end = values["date_window"]
            values["date_window"] = (date.fromisoformat(start), date.fromisoformat(end))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"date_window must be [YYYY-MM-DD, YYYY-MM-DD]: {exc}") from exc
    config = PipelineConfig(**values)
    config.validate()
    return config
