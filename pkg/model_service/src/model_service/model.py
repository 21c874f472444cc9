"""Encoder + dropout + linear head, with checkpoint save/load."""

from __future__ import annotations

import json
from pathlib import Path

import torch
from torch import nn
from transformers import AutoModel, AutoTokenizer, BertConfig, BertModel

from .labels import NUM_LABELS


class SentimentClassifier(nn.Module):
    """A pretrained encoder with a dropout layer and a 10-way linear head."""

    def __init__(self, encoder: nn.Module, dropout: float = 0.1):
        super().__init__()
        self.encoder = encoder
        self.dropout = nn.Dropout(dropout)
        self.head = nn.Linear(encoder.config.hidden_size, NUM_LABELS)

    def forward(self, input_ids: torch.Tensor, attention_mask: torch.Tensor,
                token_type_ids: torch.Tensor | None = None) -> torch.Tensor:
        output = self.encoder(input_ids=input_ids, attention_mask=attention_mask,
                              token_type_ids=token_type_ids)
        pooled = output.last_hidden_state[:, 0]  # [CLS] position
        return self.head(self.dropout(pooled))


def build_model(base_model: str, dropout: float = 0.1) -> SentimentClassifier:
    """Instantiate from a pretrained encoder name or local directory."""
    encoder = AutoModel.from_pretrained(base_model)
    return SentimentClassifier(encoder, dropout=dropout)


def save_checkpoint(model: SentimentClassifier, tokenizer, out_dir: Path,
                    dropout: float, max_length: int) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    torch.save(model.state_dict(), out_dir / "weights.pt")
    (out_dir / "encoder_config.json").write_text(
        model.encoder.config.to_json_string(), encoding="utf-8")
    (out_dir / "service_config.json").write_text(
        json.dumps({"dropout": dropout, "max_length": max_length}, indent=2),
        encoding="utf-8")
    tokenizer.save_pretrained(str(out_dir))


def load_checkpoint(model_dir: Path) -> tuple[SentimentClassifier, object, int]:
    """Return (model in eval mode, tokenizer, max_length)."""
    model_dir = Path(model_dir)
    if not (model_dir / "weights.pt").exists():
        raise FileNotFoundError(f"no checkpoint at {model_dir}")
    service = json.loads((model_dir / "service_config.json").read_text(encoding="utf-8"))
    config = BertConfig.from_json_file(str(model_dir / "encoder_config.json"))
    model = SentimentClassifier(BertModel(config), dropout=service["dropout"])
    model.load_state_dict(torch.load(model_dir / "weights.pt",
                                     map_location="cpu", weights_only=True))
    model.eval()
    tokenizer = AutoTokenizer.from_pretrained(str(model_dir))
    return model, tokenizer, int(service["max_length"])
