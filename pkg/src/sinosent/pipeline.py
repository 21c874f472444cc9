"""Stage orchestration and plot-ready artifact writers.

Each stage reads the previous stage's JSONL and adds fields, so partial
reruns stay cheap. All writers are deterministic: fixed key order, fixed
sort order, repr-formatted floats.
"""

from __future__ import annotations

import csv
import json
from datetime import datetime, timezone
from pathlib import Path

from . import classify as clf
from . import filtering, longitudinal, ngrams, polarity
from .config import PipelineConfig
from .corpus import CountryCode, MonthKey, deduplicate, ingest_cases, ingest_posts
from .errors import InputError
from .longitudinal import AnalyzedPost
from .metrics import evaluate
from .normalizer import NormalizedPost, load_table, normalize


def _write_jsonl(records, path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def _read_jsonl(path) -> list[dict]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    records = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} line {lineno}: invalid JSON: {exc}") from exc
    return records


def _write_csv(path, header, rows) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _to_normalized(record: dict) -> NormalizedPost:
    text = record["text"]
    return NormalizedPost(post_id=record["id"], text=text, tokens=tuple(text.split()))


def _to_analyzed(record: dict) -> AnalyzedPost:
    return AnalyzedPost(
        post_id=record["id"],
        country=CountryCode(record["country"]),
        timestamp=datetime.fromisoformat(record["timestamp"].replace("Z", "+00:00")),
        labels=clf.LabelVector(tuple(record["labels"])),
        custom_polarity=record.get("custom_polarity", 0.0),
        lexicon_polarity=record.get("lexicon_polarity", 0.0),
    )


def run_normalize(config: PipelineConfig, out_path) -> dict:
    result = ingest_posts(config.posts, config.posts_format, config.date_window)
    posts = result.posts
    country_filter = config.country_filter()
    if country_filter is not None:
        posts = [p for p in posts if p.country in country_filter]
    pre_dedup = len(posts)
    posts = deduplicate(posts)
    table = load_table(config.contractions, config.abbreviations, config.emojis)
    records = []
    for post in posts:
        cleaned = normalize(post, table)
        records.append({
            "id": post.id,
            "country": post.country.code,
            "timestamp": post.timestamp.isoformat().replace("+00:00", "Z"),
            "text": cleaned.text,
            "empty": cleaned.empty,
        })
    _write_jsonl(records, out_path)
    return {
        "ingested": pre_dedup + result.skipped,
        "skipped": result.skipped,
        "pre_dedup": pre_dedup,
        "post_dedup": len(posts),
    }


def run_filter(config: PipelineConfig, in_path, out_path, hits_path) -> dict:
    records = _read_jsonl(in_path)
    keywords = filtering.load_keywords(config.keywords)
    by_id = {r["id"]: r for r in records}
    posts = [_to_normalized(r) for r in records if not r.get("empty")]
    kept, hits, matched = filtering.filter_corpus(posts, keywords)
    out = []
    for post in kept:
        record = dict(by_id[post.post_id])
        record["matched_keywords"] = matched[post.post_id]
        out.append(record)
    _write_jsonl(out, out_path)
    _write_csv(hits_path, ["keyword", "count"],
               [(k, hits[k]) for k in sorted(hits, key=lambda k: (-hits[k], k))])
    return {"input": len(records), "kept": len(out)}


def run_ngram(config: PipelineConfig, in_path, out_dir) -> list[Path]:
    records = _read_jsonl(in_path)
    posts = [_to_normalized(r) for r in records]
    stopwords = ngrams.load_stopwords(config.stopwords)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for n, name in ((2, "top_bigrams.csv"), (3, "top_trigrams.csv")):
        table = ngrams.extract_ngrams(posts, n, stopwords)
        rows = [(" ".join(gram), count) for gram, count in ngrams.top_k(table, config.top_k)]
        path = out_dir / name
        _write_csv(path, ["ngram", "count"], rows)
        paths.append(path)
    return paths


def _make_backend(config: PipelineConfig):
    if config.backend == "remote":
        return clf.RemoteBackend(config.endpoint, config.batch_size)
    return clf.LexiconBackend(clf.load_sentiment_lexicon(config.sentiment_lexicon))


def run_classify(config: PipelineConfig, in_path, out_path) -> dict:
    records = _read_jsonl(in_path)
    backend = _make_backend(config)
    scores = backend.classify([r["text"] for r in records])
    out = []
    for record, row in zip(records, scores):
        record = dict(record)
        record["scores"] = row
        record["labels"] = list(clf.threshold(row, config.threshold).bits)
        out.append(record)
    _write_jsonl(out, out_path)
    return {"classified": len(out)}


def run_evaluate(config: PipelineConfig, in_path, out_path) -> dict:
    records = _read_jsonl(in_path)
    if not records:
        raise InputError(f"no labeled samples in {in_path}")
    truth = [r["truth"] for r in records]
    pred = [r["pred"] for r in records]
    scores = [r.get("scores", r["pred"]) for r in records]
    report = evaluate(truth, pred, scores)
    Path(out_path).write_text(report.to_json() + "\n", encoding="utf-8")
    return {"n_samples": report.n_samples}


def run_score(config: PipelineConfig, in_path, out_path) -> dict:
    records = _read_jsonl(in_path)
    weights = polarity.PolarityWeights.load(config.weights) if config.weights else polarity.PolarityWeights()
    lexicon = polarity.load_polarity_lexicon(config.polarity_lexicon)
    out = []
    for record in records:
        record = dict(record)
        labels = clf.LabelVector(tuple(record["labels"]))
        record["custom_polarity"] = polarity.custom_polarity(labels, weights)
        record["lexicon_polarity"] = polarity.lexicon_polarity(record["text"], lexicon)
        out.append(record)
    _write_jsonl(out, out_path)
    return {"scored": len(out)}


def _series_rows(series: longitudinal.MonthlySeries):
    return [(str(m), _fmt(v)) for m, v in sorted(series.points.items())]


def _write_cooccurrence(path, matrix: longitudinal.CooccurrenceMatrix) -> None:
    rows = [[clf.LABELS[i]] + [str(c) for c in matrix.counts[i]] for i in range(clf.NUM_LABELS)]
    _write_csv(path, ["label"] + list(clf.LABELS), rows)


def run_aggregate(config: PipelineConfig, in_path, out_dir) -> list[dict]:
    """Emit every plot-ready artifact; returns manifest entries."""
    records = _read_jsonl(in_path)
    posts = [_to_analyzed(r) for r in records]
    weights = polarity.PolarityWeights.load(config.weights) if config.weights else polarity.PolarityWeights()
    exclude = set(config.exclude_labels)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries: list[dict] = []

    def add(name, filename, schema, figure):
        entries.append({"name": name, "path": filename, "schema": schema, "figure": figure})
        return out_dir / filename

    buckets = longitudinal.bucket_by_month(posts)
    per_country_counts, global_counts = longitudinal.monthly_counts(buckets)

    _write_csv(add("monthly_counts_global", "monthly_counts_global.csv", "month_value_csv", "2"),
               ["month", "count"], _series_rows(global_counts))
    rows = []
    for country in sorted(per_country_counts, key=lambda c: c.code):
        for month, value in sorted(per_country_counts[country].points.items()):
            rows.append((country.code, str(month), _fmt(value)))
    _write_csv(add("monthly_counts_by_country", "monthly_counts_by_country.csv",
                   "country_month_value_csv", "3"),
               ["country", "month", "count"], rows)

    histogram = clf.label_count_histogram([p.labels for p in posts])
    add("label_count_histogram", "label_count_histogram.json", "histogram_json", "5")
    (out_dir / "label_count_histogram.json").write_text(
        json.dumps(histogram, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    totals = [0] * clf.NUM_LABELS
    for post in posts:
        for i, bit in enumerate(post.labels.bits):
            totals[i] += bit
    _write_csv(add("label_totals", "label_totals.csv", "label_count_csv", "8"),
               ["label", "count"], list(zip(clf.LABELS, totals)))

    years = sorted({p.timestamp.year for p in posts}) or [0]
    for ordinal, tag in ((0, "year1"), (1, "year2")):
        year = years[ordinal] if ordinal < len(years) else None
        subset = [p for p in posts if p.timestamp.year == year]
        matrix = longitudinal.cooccurrence(subset, period=str(year) if year else "none")
        _write_cooccurrence(
            add(f"cooccurrence_{tag}", f"cooccurrence_{tag}.csv", "cooccurrence_csv", "9"),
            matrix)

    share = longitudinal.sentiment_share(buckets, set(clf.LABELS) - exclude, exclude)
    rows = []
    for country in sorted(share, key=lambda c: c.code):
        for name in clf.LABELS:
            if name in share[country]:
                rows.append((country.code, name, _fmt(share[country][name])))
    _write_csv(add("sentiment_share", "sentiment_share.csv", "country_label_percent_csv", "10"),
               ["country", "label", "percent"], rows)

    rows = [(p.post_id, p.country.code, _fmt(p.custom_polarity), _fmt(p.lexicon_polarity))
            for p in posts]
    _write_csv(add("polarity_by_post", "polarity_by_post.csv", "polarity_csv", "11-12"),
               ["id", "country", "custom_polarity", "lexicon_polarity"], rows)

    for metric, filename, figure in (
        ("lexicon_polarity", "mean_polarity_lexicon.csv", "13a"),
        ("custom_polarity", "mean_polarity_custom.csv", "13b"),
    ):
        mean_series = longitudinal.mean_polarity_series(
            buckets, metric, exclude_labels=exclude, weights=weights)
        rows = []
        for country in sorted(mean_series, key=lambda c: c.code):
            for month, value in sorted(mean_series[country].points.items()):
                rows.append((country.code, str(month), _fmt(value)))
        _write_csv(add(f"mean_{metric}", filename, "country_month_value_csv", figure),
                   ["country", "month", "mean_polarity"], rows)

    correlation: dict[str, dict] = {}
    if config.cases:
        countries = config.country_filter() or set(per_country_counts)
        for cs in ingest_cases(config.cases, countries):
            case_series = longitudinal.MonthlySeries.from_sparse(
                cs.country, "new_cases",
                {m: float(v) for m, v in cs.monthly_new_cases.items()})
            counts = per_country_counts.get(cs.country)
            if counts is None:
                correlation[cs.country.code] = {"r": None, "n_months": 0,
                                                "reason": "no posts for country"}
                continue
            result = longitudinal.correlate(counts, case_series)
            correlation[cs.country.code] = {
                "r": result.r, "n_months": result.n_months, "reason": result.reason}
    add("case_correlation", "case_correlation.json", "correlation_json", "3")
    (out_dir / "case_correlation.json").write_text(
        json.dumps(correlation, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    return entries


def run_report(config: PipelineConfig, out_dir, svg: bool = False) -> Path:
    """Run the whole pipeline and write a manifest referencing every artifact."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats: dict[str, dict] = {}
    normalized = out_dir / "normalized.jsonl"
    filtered = out_dir / "filtered.jsonl"
    classified = out_dir / "classified.jsonl"
    scored = out_dir / "scored.jsonl"
    stats["normalize"] = run_normalize(config, normalized)
    stats["filter"] = run_filter(config, normalized, filtered, out_dir / "keyword_hits.csv")
    stats["classify"] = run_classify(config, filtered, classified)
    stats["score"] = run_score(config, classified, scored)

    entries = run_aggregate(config, scored, out_dir)
    for path in run_ngram(config, filtered, out_dir):
        figure = "4a" if "bigrams" in path.name else "4b"
        entries.append({"name": path.stem, "path": path.name,
                        "schema": "ngram_count_csv", "figure": figure})
    entries.sort(key=lambda e: e["name"])

    if svg:
        _render_svg(out_dir)

    manifest = {
        "artifacts": entries,
        "stats": stats,
    }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                             encoding="utf-8")
    return manifest_path


def _render_svg(out_dir: Path) -> None:
    # smoke-check charts only; the CSV/JSON artifacts are the real output
    import matplotlib
    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "sinosent"
    import matplotlib.pyplot as plt

    months, counts = [], []
    with (out_dir / "monthly_counts_global.csv").open(encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["count"]:
                months.append(row["month"])
                counts.append(float(row["count"]))
    fig, ax = plt.subplots(figsize=(10, 4))
    ax.plot(months, counts, marker="o")
    ax.set_ylabel("posts")
    ax.tick_params(axis="x", rotation=90)
    fig.tight_layout()
    fig.savefig(out_dir / "monthly_counts_global.svg", metadata={"Date": None})
    plt.close(fig)
