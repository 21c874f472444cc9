import pytest

from ms_helpers import TINY_ROWS, write_dataset
from model_service.data import load_dataset
from model_service.labels import LABELS, NUM_LABELS


def test_round_trip(tiny_dataset):
    examples = load_dataset(tiny_dataset)
    assert len(examples) == len(TINY_ROWS)
    for example, (text, bits) in zip(examples, TINY_ROWS):
        assert example.text == text
        assert example.labels == bits


def test_column_names_are_case_and_space_insensitive(tmp_path):
    path = tmp_path / "d.csv"
    header = "text," + ",".join(label.replace("_", " ").upper() for label in LABELS)
    path.write_text(header + "\nhello," + ",".join("0" * 1 for _ in LABELS) + "\n",
                    encoding="utf-8")
    examples = load_dataset(path)
    assert examples[0].labels == [0] * NUM_LABELS


def test_missing_label_column(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("Tweet,optimistic\nhello,1\n", encoding="utf-8")
    with pytest.raises(ValueError, match="missing label columns"):
        load_dataset(path)


def test_non_binary_value(tmp_path):
    path = tmp_path / "d.csv"
    header = "Tweet," + ",".join(LABELS)
    path.write_text(header + "\nhello," + "2," + "0," * 8 + "0\n", encoding="utf-8")
    with pytest.raises(ValueError, match="must be 0/1"):
        load_dataset(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_dataset(tmp_path / "nope.csv")


def test_empty_rows(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("Tweet," + ",".join(LABELS) + "\n", encoding="utf-8")
    with pytest.raises(ValueError, match="no data rows"):
        load_dataset(path)
