"""Per-country, per-month aggregation of classified and scored posts.

Empty months carry explicit None (a gap in a plot), never a fake zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime

from .classify import LABELS, NUM_LABELS, LabelVector
from .corpus import CountryCode, MonthKey
from .errors import UsageError


@dataclass(frozen=True)
class AnalyzedPost:
    """A post after classification and polarity scoring."""

    post_id: str
    country: CountryCode
    timestamp: datetime
    labels: LabelVector
    custom_polarity: float = 0.0
    lexicon_polarity: float = 0.0


@dataclass
class MonthlySeries:
    """One numeric series over contiguous months; missing months are None."""

    country: CountryCode | None  # None for a global series
    metric_name: str
    points: dict[MonthKey, float | None] = field(default_factory=dict)

    @classmethod
    def from_sparse(cls, country, metric_name, sparse: dict) -> "MonthlySeries":
        series = cls(country=country, metric_name=metric_name)
        if sparse:
            month = min(sparse)
            last = max(sparse)
            while True:
                series.points[month] = sparse.get(month)
                if month == last:
                    break
                month = month.next()
        return series


@dataclass
class CooccurrenceMatrix:
    """Symmetric 10x10 label pair counts; diagonal holds per-label totals."""

    counts: list[list[int]]
    period: str

    @classmethod
    def empty(cls, period: str) -> "CooccurrenceMatrix":
        return cls(counts=[[0] * NUM_LABELS for _ in range(NUM_LABELS)], period=period)


def bucket_by_month(posts) -> dict[tuple[CountryCode, MonthKey], list]:
    """Partition posts by (country, UTC calendar month)."""
    buckets: dict[tuple[CountryCode, MonthKey], list] = {}
    for post in posts:
        key = (post.country, MonthKey.of(post.timestamp))
        buckets.setdefault(key, []).append(post)
    return buckets


def monthly_counts(buckets) -> tuple[dict[CountryCode, MonthlySeries], MonthlySeries]:
    """Per-country post counts plus the global per-month sum."""
    per_country: dict[CountryCode, dict[MonthKey, float]] = {}
    global_sparse: dict[MonthKey, float] = {}
    for (country, month), group in buckets.items():
        per_country.setdefault(country, {})[month] = float(len(group))
        global_sparse[month] = global_sparse.get(month, 0.0) + len(group)
    series = {
        country: MonthlySeries.from_sparse(country, "post_count", sparse)
        for country, sparse in per_country.items()
    }
    return series, MonthlySeries.from_sparse(None, "post_count", global_sparse)


def mean_polarity_series(buckets, metric: str = "custom_polarity",
                         exclude_labels: set[str] | None = None,
                         weights=None) -> dict[CountryCode, MonthlySeries]:
    """Arithmetic mean polarity per bucket; empty buckets stay None.

    With exclude_labels, the excluded labels are dropped from each post's
    label vector and the custom score is recomputed before averaging.
    """
    from .polarity import custom_polarity  # local import avoids a cycle

    if metric not in ("custom_polarity", "lexicon_polarity"):
        raise UsageError(f"unknown polarity metric: {metric!r}")
    per_country: dict[CountryCode, dict[MonthKey, float]] = {}
    for (country, month), group in buckets.items():
        values = []
        for post in group:
            if metric == "custom_polarity" and exclude_labels:
                values.append(custom_polarity(post.labels.without(exclude_labels), weights))
            else:
                values.append(getattr(post, metric))
        if values:
            # fsum is exactly rounded, so the mean is reorder-invariant
            per_country.setdefault(country, {})[month] = math.fsum(values) / len(values)
    return {
        country: MonthlySeries.from_sparse(country, f"mean_{metric}", sparse)
        for country, sparse in per_country.items()
    }


def sentiment_share(buckets, labels: set[str], exclude: set[str]) -> dict[CountryCode, dict[str, float]]:
    """Per-country percentage of posts carrying each label.

    The denominator counts posts with at least one non-excluded label;
    posts whose only labels are excluded drop out entirely.
    """
    if labels & exclude:
        raise UsageError(f"labels and exclude overlap: {sorted(labels & exclude)}")
    numer: dict[CountryCode, dict[str, int]] = {}
    denom: dict[CountryCode, int] = {}
    for (country, _), group in buckets.items():
        for post in group:
            carried = set(post.labels.names()) - exclude
            if not carried:
                continue
            denom[country] = denom.get(country, 0) + 1
            for name in carried & labels:
                numer.setdefault(country, {})[name] = numer.get(country, {}).get(name, 0) + 1
    return {
        country: {
            name: 100.0 * numer.get(country, {}).get(name, 0) / denom[country]
            for name in sorted(labels)
        }
        for country in denom
    }


def cooccurrence(posts, period: str) -> CooccurrenceMatrix:
    """Count single labels (diagonal) and unordered label pairs (both triangles)."""
    matrix = CooccurrenceMatrix.empty(period)
    for post in posts:
        set_idx = [i for i, b in enumerate(post.labels.bits) if b]
        for i in set_idx:
            matrix.counts[i][i] += 1
        for a in range(len(set_idx)):
            for b in range(a + 1, len(set_idx)):
                i, j = set_idx[a], set_idx[b]
                matrix.counts[i][j] += 1
                matrix.counts[j][i] += 1
    return matrix


@dataclass(frozen=True)
class Correlation:
    """Pearson result; r is None when not computable (with the reason)."""

    r: float | None
    n_months: int
    reason: str | None = None


def correlate(series_a: MonthlySeries, series_b: MonthlySeries) -> Correlation:
    """Pearson r over months where both series have values."""
    common = [m for m in series_a.points
              if m in series_b.points
              and series_a.points[m] is not None and series_b.points[m] is not None]
    if len(common) < 3:
        return Correlation(r=None, n_months=len(common), reason="fewer than 3 overlapping months")
    xs = [series_a.points[m] for m in sorted(common)]
    ys = [series_b.points[m] for m in sorted(common)]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        return Correlation(r=None, n_months=n, reason="zero variance")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return Correlation(r=sxy / math.sqrt(sxx * syy), n_months=n)
