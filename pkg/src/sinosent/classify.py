"""Multi-label sentiment classification over the ten SenWave categories.

Two interchangeable backends: a deterministic lexicon baseline for offline
runs and tests, and a batched HTTP client for a remote model service. The
wire protocol is POST {endpoint}/classify with body {"texts": [...]} and
response {"scores": [[10 floats], ...]} in request order.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import requests

from .errors import InputError, ProtocolError, RemoteError, UsageError

# Frozen label order; all serialization uses these indices.
LABELS = (
    "optimistic",
    "thankful",
    "empathetic",
    "pessimistic",
    "anxious",
    "sad",
    "annoyed",
    "denial",
    "official_report",
    "joking",
)
NUM_LABELS = len(LABELS)
LABEL_INDEX = {name: i for i, name in enumerate(LABELS)}


@dataclass(frozen=True)
class LabelVector:
    """Ten binary slots in the frozen label order."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != NUM_LABELS or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"need {NUM_LABELS} binary slots, got {self.bits!r}")

    @classmethod
    def from_names(cls, names) -> "LabelVector":
        bits = [0] * NUM_LABELS
        for name in names:
            bits[LABEL_INDEX[name]] = 1
        return cls(tuple(bits))

    def names(self) -> list[str]:
        return [LABELS[i] for i, b in enumerate(self.bits) if b]

    def count(self) -> int:
        return sum(self.bits)

    def without(self, excluded: set[str]) -> "LabelVector":
        return LabelVector(tuple(
            0 if LABELS[i] in excluded else b for i, b in enumerate(self.bits)))


def threshold(scores, t: float = 0.5) -> LabelVector:
    """Binarize a score vector; a score exactly at t counts as set."""
    if not 0 < t < 1:
        raise UsageError(f"threshold must be in (0, 1), got {t}")
    if len(scores) != NUM_LABELS:
        raise UsageError(f"expected {NUM_LABELS} scores, got {len(scores)}")
    return LabelVector(tuple(1 if s >= t else 0 for s in scores))


def load_sentiment_lexicon(path=None) -> dict[str, frozenset[str]]:
    """token -> set of label names; file format token<TAB>label,label."""
    if path is None:
        text = resources.files("sinosent.data").joinpath("sentiment_lexicon.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    lexicon: dict[str, frozenset[str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        token, _, names = line.partition("\t")
        labels = frozenset(n.strip() for n in names.split(","))
        unknown = labels - set(LABELS)
        if unknown:
            raise InputError(f"sentiment lexicon line {lineno}: unknown labels {sorted(unknown)}")
        lexicon[token] = labels
    return lexicon


def lexicon_classify(text: str, lexicon: dict[str, frozenset[str]]) -> list[float]:
    """Deterministic baseline: score_i = min(1, hits_i / 2)."""
    hits = [0] * NUM_LABELS
    for token in text.split():
        for name in lexicon.get(token, ()):
            hits[LABEL_INDEX[name]] += 1
    return [min(1.0, h / 2) for h in hits]


class LexiconBackend:
    """Offline classifier backend backed by the token lexicon."""

    def __init__(self, lexicon=None):
        self.lexicon = lexicon if lexicon is not None else load_sentiment_lexicon()

    def classify(self, texts) -> list[list[float]]:
        return [lexicon_classify(t, self.lexicon) for t in texts]


def _validate_scores(scores, expected: int, chunk_index: int) -> None:
    if not isinstance(scores, list) or len(scores) != expected:
        raise ProtocolError(
            f"chunk {chunk_index}: expected {expected} score rows, got "
            f"{len(scores) if isinstance(scores, list) else type(scores).__name__}")
    for row in scores:
        if not isinstance(row, list) or len(row) != NUM_LABELS:
            raise ProtocolError(f"chunk {chunk_index}: score row of wrong length")
        for value in row:
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                raise ProtocolError(f"chunk {chunk_index}: score {value!r} outside [0, 1]")


def remote_classify(texts, endpoint: str, batch_size: int = 64, *,
                    max_attempts: int = 3, backoff: float = 0.5,
                    max_in_flight: int = 4, timeout: float = 30.0) -> list[list[float]]:
    """Classify texts through the remote wire protocol.

    Texts are sent in order-preserving chunks (up to max_in_flight
    concurrently); transient failures are retried with exponential backoff
    before the whole call fails naming the offending chunk.
    """
    if batch_size < 1:
        raise UsageError(f"batch_size must be >= 1, got {batch_size}")
    texts = list(texts)
    if not texts:
        return []
    url = endpoint.rstrip("/") + "/classify"
    chunks = [texts[i:i + batch_size] for i in range(0, len(texts), batch_size)]

    def send(index_chunk):
        index, chunk = index_chunk
        last_error = None
        for attempt in range(max_attempts):
            if attempt:
                time.sleep(backoff * (2 ** (attempt - 1)))
            try:
                response = requests.post(url, json={"texts": chunk}, timeout=timeout)
            except requests.RequestException as exc:
                last_error = str(exc)
                continue
            if response.status_code // 100 != 2:
                last_error = f"HTTP {response.status_code}"
                continue
            try:
                payload = response.json()
            except ValueError as exc:
                raise ProtocolError(f"chunk {index}: response is not JSON") from exc
            if "scores" not in payload:
                raise ProtocolError(f"chunk {index}: response missing 'scores'")
            scores = payload["scores"]
            _validate_scores(scores, len(chunk), index)
            return [[float(v) for v in row] for row in scores]
        raise RemoteError(
            f"chunk {index} ({len(chunk)} texts) failed after {max_attempts} attempts: {last_error}")

    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        results = list(pool.map(send, enumerate(chunks)))
    return [row for chunk_scores in results for row in chunk_scores]


class RemoteBackend:
    """Classifier backend talking to a model service over HTTP."""

    def __init__(self, endpoint: str, batch_size: int = 64, **kwargs):
        self.endpoint = endpoint
        self.batch_size = batch_size
        self.kwargs = kwargs

    def classify(self, texts) -> list[list[float]]:
        return remote_classify(texts, self.endpoint, self.batch_size, **self.kwargs)


def label_count_histogram(labels) -> dict[str, dict[str, float]]:
    """Bucket label vectors by number of set bits into {0, 1, 2, 3+}."""
    counts: Counter[str] = Counter({"0": 0, "1": 0, "2": 0, "3+": 0})
    total = 0
    for vector in labels:
        total += 1
        n = vector.count()
        counts["3+" if n >= 3 else str(n)] += 1
    return {
        bucket: {
            "count": counts[bucket],
            "percent": (100.0 * counts[bucket] / total) if total else 0.0,
        }
        for bucket in ("0", "1", "2", "3+")
    }
