"""Multi-label evaluation metrics.

Conventions the source formulas leave open, fixed here and covered by
dedicated tests: a sample where truth and prediction are both empty scores
Jaccard 1.0; a sample with an empty truth set contributes 1.0 to LRAP; a
label with no true or predicted positives contributes 0.0 to macro F1.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .classify import NUM_LABELS
from .errors import UsageError


@dataclass
class EvalReport:
    hamming_loss: float
    jaccard_sample_avg: float
    lrap: float
    f1_macro: float
    f1_micro: float
    n_samples: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _as_matrix(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != NUM_LABELS:
        raise UsageError(f"{name} must be N x {NUM_LABELS}, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise UsageError(f"{name} must have at least one sample")
    return arr


def _check_shapes(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise UsageError(f"shape mismatch: {a.shape} vs {b.shape}")


def hamming_loss(truth, pred) -> float:
    """Fraction of label slots where truth and prediction disagree."""
    t = _as_matrix(truth, "truth")
    p = _as_matrix(pred, "pred")
    _check_shapes(t, p)
    return float(np.mean(t != p))


def jaccard_sample_avg(truth, pred) -> float:
    """Mean per-sample intersection-over-union; 0/0 counts as 1.0."""
    t = _as_matrix(truth, "truth") > 0.5
    p = _as_matrix(pred, "pred") > 0.5
    _check_shapes(t, p)
    inter = np.sum(t & p, axis=1)
    union = np.sum(t | p, axis=1)
    per_sample = np.where(union == 0, 1.0, inter / np.maximum(union, 1))
    return float(per_sample.mean())


def lrap(truth, scores) -> float:
    """Label ranking average precision with inclusive (>=) tie handling.

    Per sample with true set Y: mean over j in Y of
    |{k in Y : s_k >= s_j}| / |{k : s_k >= s_j}|; empty-Y samples
    contribute 1.0.
    """
    t = _as_matrix(truth, "truth") > 0.5
    s = _as_matrix(scores, "scores")
    _check_shapes(t, s)
    if not np.isfinite(s).all():
        raise UsageError("scores must be finite")
    per_sample = np.empty(t.shape[0])
    for i in range(t.shape[0]):
        true_idx = np.flatnonzero(t[i])
        if true_idx.size == 0:
            per_sample[i] = 1.0
            continue
        # rank[j] = how many scores are >= s_j (inclusive of j itself)
        ge = s[i][None, :] >= s[i][:, None]  # ge[j, k] = s_k >= s_j
        total_ge = ge.sum(axis=1)
        true_ge = ge[:, true_idx].sum(axis=1)
        per_sample[i] = np.mean(true_ge[true_idx] / total_ge[true_idx])
    return float(per_sample.mean())


def f1(truth, pred, averaging: str) -> float:
    """Micro pools TP/FP/FN globally; macro averages per-label F1 with
    zero-support labels contributing 0.0."""
    if averaging not in ("macro", "micro"):
        raise UsageError(f"averaging must be macro or micro, got {averaging!r}")
    t = _as_matrix(truth, "truth") > 0.5
    p = _as_matrix(pred, "pred") > 0.5
    _check_shapes(t, p)
    tp = np.sum(t & p, axis=0).astype(float)
    fp = np.sum(~t & p, axis=0).astype(float)
    fn = np.sum(t & ~p, axis=0).astype(float)
    if averaging == "micro":
        denom = 2 * tp.sum() + fp.sum() + fn.sum()
        return float(2 * tp.sum() / denom) if denom else 0.0
    denom = 2 * tp + fp + fn
    per_label = np.where(denom == 0, 0.0, 2 * tp / np.maximum(denom, 1e-300))
    return float(per_label.mean())


def evaluate(truth, pred, scores) -> EvalReport:
    """All five reported metrics in one report."""
    t = _as_matrix(truth, "truth")
    return EvalReport(
        hamming_loss=hamming_loss(truth, pred),
        jaccard_sample_avg=jaccard_sample_avg(truth, pred),
        lrap=lrap(truth, scores),
        f1_macro=f1(truth, pred, "macro"),
        f1_micro=f1(truth, pred, "micro"),
        n_samples=int(t.shape[0]),
    )
