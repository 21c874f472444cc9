import json
from importlib import resources
from pathlib import Path

import pytest

from fake_server import FakeClassifierServer
from sinosent.cli import main

SAMPLE = resources.files("sinosent.data") / "sample"
SAMPLE_POSTS = str(SAMPLE / "posts.csv")
SAMPLE_CASES = str(SAMPLE / "cases.csv")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_config_error_is_2(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "normalize", "--posts", SAMPLE_POSTS,
                               "--threshold", "2.0", "--output-dir", str(tmp_path))
        assert code == 2
        assert err.startswith("error: UsageError:")

    def test_missing_configured_file_is_2(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "normalize", "--posts", "/does/not/exist.csv",
                               "--output-dir", str(tmp_path))
        assert code == 2

    def test_io_error_is_3(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "filter", "--input", str(tmp_path / "missing.jsonl"),
                               "--output-dir", str(tmp_path))
        assert code == 3
        assert err.startswith("error: InputError:")

    def test_remote_error_is_4(self, capsys, tmp_path):
        (tmp_path / "in.jsonl").write_text(
            '{"id": "1", "country": "AU", "timestamp": "2020-05-01T00:00:00Z", '
            '"text": "china news", "empty": false}\n', encoding="utf-8")
        code, _, err = run_cli(capsys, "classify", "--input", str(tmp_path / "in.jsonl"),
                               "--backend", "remote", "--endpoint", "http://127.0.0.1:1",
                               "--output-dir", str(tmp_path))
        assert code == 4
        assert err.startswith("error: RemoteError:")

    def test_bad_config_json(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json", encoding="utf-8")
        code, _, _ = run_cli(capsys, "report", "--config", str(cfg),
                             "--output-dir", str(tmp_path))
        assert code == 2

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"no_such_key": 1}', encoding="utf-8")
        code, _, _ = run_cli(capsys, "report", "--config", str(cfg),
                             "--output-dir", str(tmp_path))
        assert code == 2


class TestStages:
    def test_normalize_reports_both_dedup_counts(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "normalize", "--posts", SAMPLE_POSTS,
                               "--output-dir", str(tmp_path))
        assert code == 0
        stats = json.loads(out)
        assert stats["pre_dedup"] >= stats["post_dedup"]
        assert (tmp_path / "normalized.jsonl").exists()

    def test_normalize_golden_row(self, capsys, tmp_path):
        posts = tmp_path / "posts.csv"
        posts.write_text(
            "id,text,timestamp,country\n"
            'r1,"Lol.....happy new month bro,quickly sending me something before '
            'coronavirus wipe April fool finally 0124152280 gtbank",'
            "2020-05-01T00:00:00Z,AU\n", encoding="utf-8")
        code, _, _ = run_cli(capsys, "normalize", "--posts", str(posts),
                             "--output-dir", str(tmp_path))
        assert code == 0
        record = json.loads((tmp_path / "normalized.jsonl").read_text().splitlines()[0])
        assert record["text"] == (
            "laughing out loud happy new month bro quickly sending me something "
            "before coronavirus wipe april fool finally 0124152280 gtbank")

    def test_evaluate_perfect_predictions(self, capsys, tmp_path):
        labeled = tmp_path / "labeled.jsonl"
        row = {"truth": [1, 0] * 5, "pred": [1, 0] * 5,
               "scores": [1.0, 0.0] * 5}
        labeled.write_text(json.dumps(row) + "\n", encoding="utf-8")
        code, _, _ = run_cli(capsys, "evaluate", "--input", str(labeled),
                             "--output-dir", str(tmp_path))
        assert code == 0
        report = json.loads((tmp_path / "eval_report.json").read_text())
        assert report["hamming_loss"] == 0.0
        assert report["f1_micro"] == 1.0

    def test_stage_outputs_compose(self, capsys, tmp_path):
        for args in (
            ("normalize", "--posts", SAMPLE_POSTS),
            ("filter", "--input", str(tmp_path / "normalized.jsonl")),
            ("ngram", "--input", str(tmp_path / "filtered.jsonl")),
            ("classify", "--input", str(tmp_path / "filtered.jsonl")),
            ("score", "--input", str(tmp_path / "classified.jsonl")),
            ("aggregate", "--input", str(tmp_path / "scored.jsonl")),
        ):
            code, _, err = run_cli(capsys, *args, "--output-dir", str(tmp_path))
            assert code == 0, (args, err)

    def test_classify_with_remote_backend(self, capsys, tmp_path):
        (tmp_path / "in.jsonl").write_text(
            '{"id": "1", "country": "AU", "timestamp": "2020-05-01T00:00:00Z", '
            '"text": "china news", "empty": false}\n', encoding="utf-8")
        with FakeClassifierServer() as server:
            code, _, _ = run_cli(capsys, "classify", "--input", str(tmp_path / "in.jsonl"),
                                 "--backend", "remote", "--endpoint", server.endpoint,
                                 "--output-dir", str(tmp_path))
        assert code == 0
        record = json.loads((tmp_path / "classified.jsonl").read_text().splitlines()[0])
        assert len(record["scores"]) == 10
        assert len(record["labels"]) == 10


def tree_bytes(root: Path) -> dict:
    return {p.relative_to(root).as_posix(): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


class TestReport:
    def test_manifest_artifacts(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "report", "--posts", SAMPLE_POSTS,
                             "--cases", SAMPLE_CASES, "--output-dir", str(tmp_path))
        assert code == 0
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        artifacts = manifest["artifacts"]
        assert len(artifacts) == 13
        for entry in artifacts:
            assert (tmp_path / entry["path"]).exists()
            assert entry["schema"]
        figures = {entry["figure"] for entry in artifacts}
        for wanted in ("2", "4a", "4b", "5", "9", "10", "13a", "13b"):
            assert wanted in figures
        assert "11-12" in figures

    def test_byte_identical_across_runs(self, capsys, tmp_path):
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        for out in (out1, out2):
            code, _, _ = run_cli(capsys, "report", "--posts", SAMPLE_POSTS,
                                 "--cases", SAMPLE_CASES, "--output-dir", str(out))
            assert code == 0
        assert tree_bytes(out1) == tree_bytes(out2)

    def test_config_file_with_cli_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "posts": SAMPLE_POSTS,
            "cases": SAMPLE_CASES,
            "top_k": 5,
        }), encoding="utf-8")
        code, _, _ = run_cli(capsys, "report", "--config", str(cfg),
                             "--top-k", "3", "--output-dir", str(tmp_path / "out"))
        assert code == 0
        lines = (tmp_path / "out" / "top_bigrams.csv").read_text().splitlines()
        assert len(lines) == 1 + 3  # header plus overridden top-k
