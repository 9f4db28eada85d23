"""Evaluate a classifier over every condition of a generated corpus.

Reads the corpus manifest (JSON schema of the benchmark toolchain), runs the
model on each condition directory, scores predictions against a ground-truth
table, and writes the results CSV plus its metadata sidecar in the wire
format the analyze command ingests.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from mcvbench_adapter.models import Model, ModelError

RESULTS_HEADER = ("condition_ordinal", "canonical_label", "correct", "total", "accuracy")


class AdapterError(RuntimeError):
    """Configuration or evaluation failure."""


@dataclass(frozen=True)
class ConditionRef:
    ordinal: int
    label: str
    directory: str
    files: tuple[str, ...]


@dataclass(frozen=True)
class AdapterConfig:
    """Evaluation request: which manifest, which model, which truth table."""

    manifest_path: Path
    truth_path: Path
    output_csv: Path
    classifier_name: str
    training_label: str
    model: Model


def load_truth(path: Path) -> dict[str, str]:
    """Ground-truth table from a `filename,label` CSV (header optional)."""
    truth: dict[str, str] = {}
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        for record in csv.reader(handle):
            if not record:
                continue
            if len(record) != 2:
                raise AdapterError(f"{path}: ground truth rows must be 'filename,label', got {record!r}")
            if record == ["filename", "label"]:
                continue
            truth[record[0]] = record[1]
    if not truth:
        raise AdapterError(f"{path}: empty ground truth table")
    return truth


def read_manifest(path: Path) -> tuple[str, list[ConditionRef]]:
    """Manifest digest and per-condition directory listing."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise AdapterError(f"cannot read manifest {path}: {exc}") from exc
    try:
        by_directory = {entry["directory"]: entry["files"] for entry in doc["layout"]}
        conditions = []
        for record in doc["conditions"]:
            ordinal, label = int(record["ordinal"]), str(record["label"])
            directory = f"{label}#{ordinal}"
            conditions.append(
                ConditionRef(
                    ordinal=ordinal,
                    label=label,
                    directory=directory,
                    files=tuple(sorted(by_directory[directory])),
                )
            )
        digest = str(doc["digest"])
    except (KeyError, TypeError, ValueError) as exc:
        raise AdapterError(f"manifest {path} does not match the expected schema: {exc}") from exc
    return digest, conditions


def _locate_failure(model: Model, paths: Sequence[Path]) -> Path:
    for path in paths:
        try:
            model.predict([path])
        except ModelError:
            return path
    return paths[0]


def score_condition(model: Model, paths: Sequence[Path], truth: Mapping[str, str]) -> tuple[int, int]:
    """(correct, total) for one condition; order of `paths` does not matter."""
    try:
        labels = model.predict(paths)
    except ModelError as exc:
        offender = _locate_failure(model, paths)
        raise AdapterError(f"model failed on {offender}: {exc}") from exc
    correct = sum(1 for path, label in zip(paths, labels) if truth[path.name] == label)
    return correct, len(paths)


def evaluate(config: AdapterConfig) -> dict[int, float]:
    """Run the model over every condition and write results CSV + sidecar.

    Returns {condition ordinal: accuracy}. Deterministic given a
    deterministic model: conditions are visited in manifest order and images
    in sorted filename order.
    """
    digest, conditions = read_manifest(config.manifest_path)
    truth = load_truth(config.truth_path)
    root = Path(config.manifest_path).parent

    for condition in conditions:
        missing = [name for name in condition.files if name not in truth]
        if missing:
            raise AdapterError(
                f"no ground truth for {missing[0]} (and {len(missing) - 1} more) in condition {condition.directory}"
            )

    accuracies: dict[int, float] = {}
    rows: list[tuple[int, str, int, int, float]] = []
    for condition in conditions:
        paths = [root / condition.directory / name for name in condition.files]
        correct, total = score_condition(config.model, paths, truth)
        accuracy = correct / total
        accuracies[condition.ordinal] = accuracy
        rows.append((condition.ordinal, condition.label, correct, total, accuracy))

    output = Path(config.output_csv)
    with output.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RESULTS_HEADER)
        for ordinal, label, correct, total, accuracy in rows:
            writer.writerow([ordinal, label, correct, total, f"{accuracy:.10f}"])
    sidecar = output.with_suffix(".meta.json") if output.suffix == ".csv" else output.with_name(output.name + ".meta.json")
    sidecar.write_text(
        json.dumps(
            {
                "classifier_name": config.classifier_name,
                "training_label": config.training_label,
                "manifest_digest": digest,
            },
            sort_keys=True,
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return accuracies
