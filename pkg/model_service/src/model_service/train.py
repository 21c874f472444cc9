"""Fine-tuning loop and holdout evaluation.

The holdout report uses the same flat JSON schema as the pipeline's
evaluation stage (hamming_loss, jaccard_sample_avg, lrap, f1_macro,
f1_micro, n_samples) so downstream tooling can read either. Metrics are
computed with scikit-learn, keeping this implementation independent of the
pipeline's.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch
from sklearn.metrics import (
    f1_score,
    hamming_loss,
    jaccard_score,
    label_ranking_average_precision_score,
)
from torch import nn
from transformers import AutoTokenizer

from .data import LabeledExample, load_dataset
from .model import SentimentClassifier, build_model, save_checkpoint


@dataclass
class TrainingConfig:
    base_model: str = "bert-base-uncased"
    learning_rate: float = 1e-5
    epochs: int = 4
    train_split: float = 0.9
    batch_size: int = 16
    dropout: float = 0.1
    max_length: int = 128
    threshold: float = 0.5
    seed: int = 42

    @classmethod
    def load(cls, path: Path | None, overrides: dict | None = None) -> "TrainingConfig":
        values = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text(encoding="utf-8")))
        values.update(overrides or {})
        known = set(cls.__dataclass_fields__)
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**values)


@dataclass
class TrainingResult:
    report: dict
    epoch_losses: list[float] = field(default_factory=list)
    converged: bool = True


def seed_everything(seed: int) -> None:
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)


def _encode(tokenizer, texts: list[str], max_length: int):
    return tokenizer(texts, padding="max_length", truncation=True,
                     max_length=max_length, return_tensors="pt")


def _batches(n: int, batch_size: int):
    for start in range(0, n, batch_size):
        yield slice(start, min(start + batch_size, n))


def split_dataset(examples: list[LabeledExample], train_split: float,
                  seed: int) -> tuple[list[LabeledExample], list[LabeledExample]]:
    order = list(range(len(examples)))
    random.Random(seed).shuffle(order)
    cut = int(round(len(examples) * train_split))
    if cut in (0, len(examples)) and len(examples) > 1:
        cut = max(1, min(len(examples) - 1, cut))
    return [examples[i] for i in order[:cut]], [examples[i] for i in order[cut:]]


def evaluate_holdout(model: SentimentClassifier, tokenizer,
                     holdout: list[LabeledExample], config: TrainingConfig) -> dict:
    model.eval()
    truth = np.array([ex.labels for ex in holdout])
    rows = []
    with torch.no_grad():
        for batch in _batches(len(holdout), config.batch_size):
            encoded = _encode(tokenizer, [ex.text for ex in holdout[batch]],
                              config.max_length)
            rows.append(torch.sigmoid(model(**encoded)).numpy())
    scores = np.concatenate(rows)
    pred = (scores >= config.threshold).astype(int)
    return {
        "hamming_loss": float(hamming_loss(truth, pred)),
        "jaccard_sample_avg": float(jaccard_score(truth, pred, average="samples",
                                                  zero_division=1.0)),
        "lrap": float(label_ranking_average_precision_score(truth, scores)),
        "f1_macro": float(f1_score(truth, pred, average="macro", zero_division=0.0)),
        "f1_micro": float(f1_score(truth, pred, average="micro", zero_division=0.0)),
        "n_samples": len(holdout),
    }


def train_model(model: SentimentClassifier, tokenizer,
                examples: list[LabeledExample], config: TrainingConfig) -> TrainingResult:
    """Fine-tune in place; returns holdout report and per-epoch mean loss."""
    seed_everything(config.seed)
    train_set, holdout = split_dataset(examples, config.train_split, config.seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    loss_fn = nn.BCEWithLogitsLoss()
    targets = torch.tensor([ex.labels for ex in train_set], dtype=torch.float32)
    epoch_losses = []
    for _ in range(config.epochs):
        model.train()
        losses = []
        for batch in _batches(len(train_set), config.batch_size):
            encoded = _encode(tokenizer, [ex.text for ex in train_set[batch]],
                              config.max_length)
            optimizer.zero_grad()
            loss = loss_fn(model(**encoded), targets[batch])
            loss.backward()
            optimizer.step()
            losses.append(loss.item())
        epoch_losses.append(sum(losses) / len(losses))
    report = evaluate_holdout(model, tokenizer, holdout, config)
    # a rising loss is reported, not fatal
    converged = len(epoch_losses) < 2 or epoch_losses[-1] <= epoch_losses[0]
    return TrainingResult(report=report, epoch_losses=epoch_losses, converged=converged)


def run_training(dataset_path: Path, out_dir: Path, config: TrainingConfig) -> TrainingResult:
    """train CLI entry: load data, fine-tune, write checkpoint + report."""
    examples = load_dataset(dataset_path)
    seed_everything(config.seed)
    tokenizer = AutoTokenizer.from_pretrained(config.base_model)
    model = build_model(config.base_model, dropout=config.dropout)
    result = train_model(model, tokenizer, examples, config)
    out_dir = Path(out_dir)
    save_checkpoint(model, tokenizer, out_dir, config.dropout, config.max_length)
    (out_dir / "eval_report.json").write_text(
        json.dumps(result.report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    (out_dir / "training_log.json").write_text(
        json.dumps({"epoch_losses": result.epoch_losses,
                    "converged": result.converged}, indent=2) + "\n",
        encoding="utf-8")
    return result
