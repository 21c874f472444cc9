"""Core domain records and file ingestion.

Posts arrive as CSV (header ``id,text,timestamp,country``) or JSONL with
the same keys. COVID case data arrives in the wide cumulative layout used
by the public Johns Hopkins time-series CSVs: one row per region, one
column per date, cumulative counts.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path

from .errors import InputError, UsageError

# The six countries covered by the source corpus, keyed by ISO 3166 alpha-2.
KNOWN_COUNTRIES = {
    "AU": "Australia",
    "BR": "Brazil",
    "IN": "India",
    "ID": "Indonesia",
    "JP": "Japan",
    "GB": "United Kingdom",
}

_NAME_TO_CODE = {name.lower(): code for code, name in KNOWN_COUNTRIES.items()}
# Common aliases seen in public case data.
_NAME_TO_CODE.update({"uk": "GB", "united kingdom": "GB"})

DEFAULT_WINDOW = (date(2020, 3, 1), date(2022, 2, 28))


@dataclass(frozen=True, order=True)
class MonthKey:
    """A calendar month, totally ordered, formatted as YYYY-MM."""

    year: int
    month: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @classmethod
    def parse(cls, text: str) -> "MonthKey":
        year, _, month = text.partition("-")
        return cls(int(year), int(month))

    @classmethod
    def of(cls, when: datetime | date) -> "MonthKey":
        return cls(when.year, when.month)

    def next(self) -> "MonthKey":
        if self.month == 12:
            return MonthKey(self.year + 1, 1)
        return MonthKey(self.year, self.month + 1)


@dataclass(frozen=True)
class CountryCode:
    """ISO 3166 alpha-2 country, with the six corpus countries named."""

    code: str

    def __post_init__(self):
        if len(self.code) != 2 or not self.code.isalpha() or not self.code.isupper():
            raise ValueError(f"not an alpha-2 country code: {self.code!r}")

    @property
    def is_known(self) -> bool:
        return self.code in KNOWN_COUNTRIES

    @property
    def name(self) -> str:
        return KNOWN_COUNTRIES.get(self.code, self.code)

    def __str__(self) -> str:
        return self.code

    @classmethod
    def parse(cls, text: str) -> "CountryCode":
        cleaned = text.strip()
        code = _NAME_TO_CODE.get(cleaned.lower(), cleaned.upper())
        return cls(code)


@dataclass(frozen=True)
class RawPost:
    """One ingested social-media record."""

    id: str
    text: str
    timestamp: datetime
    country: CountryCode


@dataclass
class IngestResult:
    posts: list[RawPost]
    skipped: int = 0
    warnings: list[str] = field(default_factory=list)


@dataclass
class CaseSeries:
    """Monthly new COVID cases for one country, differenced from cumulative data."""

    country: CountryCode
    monthly_new_cases: dict[MonthKey, int]
    clamp_warnings: int = 0


def _parse_timestamp(raw: str) -> datetime:
    ts = datetime.fromisoformat(raw.strip().replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _parse_row(row: dict, window: tuple[date, date]) -> RawPost:
    post_id = str(row["id"]).strip()
    if not post_id:
        raise ValueError("empty id")
    ts = _parse_timestamp(str(row["timestamp"]))
    if not window[0] <= ts.date() <= window[1]:
        raise ValueError(f"timestamp {ts.date()} outside window {window[0]}..{window[1]}")
    return RawPost(
        id=post_id,
        text=str(row["text"]),
        timestamp=ts,
        country=CountryCode.parse(str(row["country"])),
    )


def ingest_posts(path, format: str, window: tuple[date, date] = DEFAULT_WINDOW) -> IngestResult:
    """Read posts from a CSV or JSONL file.

    Malformed rows (bad timestamp, missing fields, out-of-window dates) are
    skipped and counted, never fatal. An unreadable file is fatal.
    """
    if format not in ("csv", "jsonl"):
        raise UsageError(f"unknown post format: {format!r} (expected csv or jsonl)")
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read posts file {path}: {exc}") from exc

    result = IngestResult(posts=[])
    if format == "csv":
        reader = csv.DictReader(raw.splitlines())
        rows = list(reader)
    else:
        rows = []
        for lineno, line in enumerate(raw.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError:
                result.skipped += 1
                result.warnings.append(f"line {lineno}: invalid JSON, skipped")

    for i, row in enumerate(rows, start=1):
        try:
            result.posts.append(_parse_row(row, window))
        except (KeyError, ValueError, TypeError) as exc:
            result.skipped += 1
            result.warnings.append(f"row {i}: {exc}, skipped")
    return result


def write_posts(posts, path, format: str) -> None:
    """Serialize posts back to CSV or JSONL (round-trip stable with ingest_posts)."""
    if format not in ("csv", "jsonl"):
        raise UsageError(f"unknown post format: {format!r}")
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        if format == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["id", "text", "timestamp", "country"])
            for p in posts:
                writer.writerow([p.id, p.text, p.timestamp.isoformat().replace("+00:00", "Z"), p.country.code])
        else:
            for p in posts:
                fh.write(json.dumps({
                    "id": p.id,
                    "text": p.text,
                    "timestamp": p.timestamp.isoformat().replace("+00:00", "Z"),
                    "country": p.country.code,
                }, ensure_ascii=False) + "\n")


def _squash_ws(text: str) -> str:
    return " ".join(text.split())


def deduplicate(posts) -> list[RawPost]:
    """Drop repeated ids, then repeated texts (whitespace-normalized), keeping first occurrences."""
    seen_ids: set[str] = set()
    seen_texts: set[str] = set()
    kept: list[RawPost] = []
    for post in posts:
        if post.id in seen_ids:
            continue
        key = _squash_ws(post.text)
        if key in seen_texts:
            seen_ids.add(post.id)
            continue
        seen_ids.add(post.id)
        seen_texts.add(key)
        kept.append(post)
    return kept


def _parse_case_date(raw: str) -> date | None:
    raw = raw.strip()
    for fmt in ("%m/%d/%y", "%Y-%m-%d", "%m/%d/%Y"):
        try:
            return datetime.strptime(raw, fmt).date()
        except ValueError:
            continue
    return None


def ingest_cases(path, country_filter: set[CountryCode]) -> list[CaseSeries]:
    """Read a wide cumulative-cases CSV and difference it into monthly new cases.

    Rows for the same country (e.g. provinces) are summed before
    differencing. Downward revisions clamp the month to 0 and are counted
    on the resulting series.
    """
    path = Path(path)
    try:
        with path.open(encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            rows = list(reader)
    except OSError as exc:
        raise InputError(f"cannot read cases file {path}: {exc}") from exc
    if header is None:
        raise InputError(f"cases file {path} is empty")

    country_col = None
    for i, name in enumerate(header):
        if name.strip().lower() in ("country/region", "country", "country_region"):
            country_col = i
            break
    if country_col is None:
        raise InputError(f"cases file {path} has no country column")

    date_cols = [(i, d) for i, name in enumerate(header)
                 if (d := _parse_case_date(name)) is not None]
    date_cols.sort(key=lambda item: item[1])

    series: list[CaseSeries] = []
    for country in sorted(country_filter, key=lambda c: c.code):
        totals = [0] * len(date_cols)
        matched = False
        wanted = {country.code.lower(), country.name.lower()}
        for row in rows:
            if row[country_col].strip().lower() not in wanted:
                continue
            matched = True
            for j, (col, _) in enumerate(date_cols):
                cell = row[col].strip() if col < len(row) else ""
                totals[j] += int(float(cell)) if cell else 0

        cs = CaseSeries(country=country, monthly_new_cases={})
        if matched and date_cols:
            # last cumulative value observed in each calendar month
            month_last: dict[MonthKey, int] = {}
            for j, (_, day) in enumerate(date_cols):
                month_last[MonthKey.of(day)] = totals[j]
            months = sorted(month_last)
            # forward-fill gaps so the series stays contiguous
            filled: dict[MonthKey, int] = {}
            cursor = months[0]
            prev_val = month_last[cursor]
            filled[cursor] = prev_val
            while cursor < months[-1]:
                cursor = cursor.next()
                prev_val = month_last.get(cursor, prev_val)
                filled[cursor] = prev_val
            ordered = sorted(filled)
            for prev_m, cur_m in zip(ordered, ordered[1:]):
                delta = filled[cur_m] - filled[prev_m]
                if delta < 0:
                    delta = 0
                    cs.clamp_warnings += 1
                cs.monthly_new_cases[cur_m] = delta
        series.append(cs)
    return series
