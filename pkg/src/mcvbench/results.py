"""Results-CSV wire format: per-condition accuracies plus a metadata sidecar.

This is the boundary between the benchmark toolchain and whatever produces
classifier predictions; the model adapter writes these files and the analyze
command ingests them.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from mcvbench.metrics import ConditionResult, RunResults

RESULTS_HEADER = ("condition_ordinal", "canonical_label", "correct", "total", "accuracy")


class ResultsFormatError(ValueError):
    """Results file that cannot be parsed against the wire format."""


def sidecar_path(csv_path: Path | str) -> Path:
    """Metadata sidecar location for a results CSV: foo.csv -> foo.meta.json."""
    csv_path = Path(csv_path)
    if csv_path.suffix == ".csv":
        return csv_path.with_suffix(".meta.json")
    return csv_path.with_name(csv_path.name + ".meta.json")


def write_results(
    csv_path: Path | str,
    rows: Iterable[ConditionResult],
    classifier_name: str,
    training_label: str,
    manifest_digest: str,
) -> None:
    """Write one run's results CSV and its sidecar JSON."""
    csv_path = Path(csv_path)
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RESULTS_HEADER)
        for row in rows:
            writer.writerow([row.ordinal, row.label, row.correct, row.total, f"{row.accuracy:.10f}"])
    sidecar = {
        "classifier_name": classifier_name,
        "training_label": training_label,
        "manifest_digest": manifest_digest,
    }
    sidecar_path(csv_path).write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def read_results(csv_path: Path | str) -> RunResults:
    """Parse a results CSV and its sidecar into a RunResults."""
    csv_path = Path(csv_path)
    meta_path = sidecar_path(csv_path)
    if not meta_path.is_file():
        raise ResultsFormatError(f"missing metadata sidecar {meta_path}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ResultsFormatError(f"malformed sidecar {meta_path}: {exc}") from exc
    for key in ("classifier_name", "training_label", "manifest_digest"):
        if key not in meta:
            raise ResultsFormatError(f"sidecar {meta_path} missing {key!r}")

    rows: list[ConditionResult] = []
    with csv_path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != list(RESULTS_HEADER):
            raise ResultsFormatError(f"{csv_path}: bad header {header!r}")
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(RESULTS_HEADER):
                raise ResultsFormatError(f"{csv_path}:{line_no}: expected {len(RESULTS_HEADER)} fields")
            try:
                rows.append(
                    ConditionResult(
                        ordinal=int(record[0]),
                        label=record[1],
                        correct=int(record[2]),
                        total=int(record[3]),
                        accuracy=float(record[4]),
                    )
                )
            except ValueError as exc:
                raise ResultsFormatError(f"{csv_path}:{line_no}: {exc}") from exc
    return RunResults(
        classifier_name=str(meta["classifier_name"]),
        training_label=str(meta["training_label"]),
        rows=tuple(rows),
        manifest_digest=str(meta["manifest_digest"]),
    )
