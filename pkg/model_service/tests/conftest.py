import sys
from pathlib import Path

import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

sys.path.insert(0, str(Path(__file__).parent))
# the pipeline's endpoint-agnostic protocol checks live in its test tree
sys.path.insert(0, str(Path(__file__).parents[2] / "tests"))

from ms_helpers import MAX_LENGTH, TINY_ROWS, VOCAB, write_dataset


@pytest.fixture(scope="session")
def tiny_base(tmp_path_factory):
    """A small randomly initialized encoder + tokenizer saved as a local base model."""
    base = tmp_path_factory.mktemp("tiny-base")
    vocab_file = base / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    tokenizer = BertTokenizer(vocab_file=str(vocab_file), do_lower_case=True)
    tokenizer.save_pretrained(str(base))
    torch.manual_seed(0)
    config = BertConfig(vocab_size=len(VOCAB), hidden_size=32, num_hidden_layers=2,
                        num_attention_heads=2, intermediate_size=64,
                        max_position_embeddings=MAX_LENGTH)
    BertModel(config).save_pretrained(str(base))
    return base


@pytest.fixture(scope="session")
def tiny_dataset(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "labeled.csv"
    write_dataset(path, TINY_ROWS)
    return path


@pytest.fixture(scope="session")
def checkpoint_dir(tmp_path_factory, tiny_base, tiny_dataset):
    """A trained-once checkpoint shared by the serving tests."""
    from model_service.train import TrainingConfig, run_training

    out = tmp_path_factory.mktemp("checkpoint")
    config = TrainingConfig(base_model=str(tiny_base), epochs=1, batch_size=4,
                            learning_rate=1e-3, max_length=MAX_LENGTH, seed=7)
    run_training(tiny_dataset, out, config)
    return out
