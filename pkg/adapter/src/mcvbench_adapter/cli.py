"""Command-line wrapper: evaluate one model over one corpus manifest."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from mcvbench_adapter.adapter import AdapterConfig, AdapterError, evaluate
from mcvbench_adapter.models import ModelError, PythonModel, SubprocessModel


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcvbench-adapter", description=__doc__)
    parser.add_argument("--manifest", required=True, type=Path, help="corpus manifest.json")
    parser.add_argument("--truth", required=True, type=Path, help="ground truth CSV: filename,label")
    parser.add_argument("--out", required=True, type=Path, help="results CSV output path")
    parser.add_argument("--classifier-name", required=True)
    parser.add_argument("--training-label", required=True, help='canonical training condition, e.g. "clean"')
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--model-py", help='in-process model: "module:callable" or "file.py:callable"')
    group.add_argument("--model-cmd", help="subprocess model: command invoked with <paths_file> <labels_file>")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        model = PythonModel(args.model_py) if args.model_py else SubprocessModel(args.model_cmd)
        config = AdapterConfig(
            manifest_path=args.manifest,
            truth_path=args.truth,
            output_csv=args.out,
            classifier_name=args.classifier_name,
            training_label=args.training_label,
            model=model,
        )
        accuracies = evaluate(config)
    except (AdapterError, ModelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out} ({len(accuracies)} conditions)")
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
