"""Command line: `model-service train ...` and `model-service serve ...`."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .train import TrainingConfig, run_training


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="model-service")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="fine-tune on a labeled dataset")
    train.add_argument("--dataset", required=True, help="labeled CSV path")
    train.add_argument("--output-dir", required=True, help="checkpoint directory")
    train.add_argument("--config", help="TrainingConfig overrides as JSON file")
    train.add_argument("--base-model", help="pretrained encoder name or path")
    train.add_argument("--epochs", type=int)
    train.add_argument("--learning-rate", type=float)
    train.add_argument("--batch-size", type=int)
    train.add_argument("--seed", type=int)

    serve = sub.add_parser("serve", help="serve a trained checkpoint over HTTP")
    serve.add_argument("--model-dir", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            overrides = {
                key: value
                for key, value in (("base_model", args.base_model),
                                   ("epochs", args.epochs),
                                   ("learning_rate", args.learning_rate),
                                   ("batch_size", args.batch_size),
                                   ("seed", args.seed))
                if value is not None
            }
            config = TrainingConfig.load(Path(args.config) if args.config else None,
                                         overrides)
            result = run_training(Path(args.dataset), Path(args.output_dir), config)
            print(json.dumps({"report": result.report,
                              "converged": result.converged}, sort_keys=True))
            return 0
        from .server import serve
        serve(Path(args.model_dir), args.host, args.port)
        return 0
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
