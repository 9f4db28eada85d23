"""Robustness statistics: run summaries, quadrant groups, family aggregates,
and rank/linear correlations.

Accuracies are fractions in [0, 1] internally and percentages at module
boundaries (summaries, tables, plots).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from mcvbench.grid import CLEAN_LABEL, parse_label


def pop_stddev(values: Sequence[float]) -> float:
    """Population standard deviation: sqrt(sum((x - mean)^2) / n)."""
    if len(values) == 0:
        raise ValueError("pop_stddev of empty input")
    mean = math.fsum(values) / len(values)
    return math.sqrt(math.fsum((x - mean) ** 2 for x in values) / len(values))


def cv_percent(values: Sequence[float]) -> float:
    """Coefficient of variation: population stddev as a percentage of the mean."""
    if len(values) == 0:
        raise ValueError("cv_percent of empty input")
    mean = math.fsum(values) / len(values)
    if mean == 0.0:
        raise ValueError("coefficient of variation undefined for zero mean")
    return 100.0 * pop_stddev(values) / mean


@dataclass(frozen=True)
class ConditionResult:
    """Accuracy of one classifier on one test condition."""

    ordinal: int
    label: str
    correct: int
    total: int
    accuracy: float


@dataclass(frozen=True)
class RunResults:
    """Per-condition accuracies for one trained classifier.

    `training_label` is the canonical label of the condition used to corrupt
    the classifier's training set ("clean" for an uncorrupted one).
    """

    classifier_name: str
    training_label: str
    rows: tuple[ConditionResult, ...]
    manifest_digest: str | None = None

    @property
    def display_name(self) -> str:
        return f"{self.classifier_name}({self.training_label})"


@dataclass(frozen=True)
class RunSummary:
    """Derived statistics of one run, all in percent."""

    classifier_name: str
    training_label: str
    cv: float
    mean_accuracy: float
    accu_clean: float | None
    min_accuracy: float
    max_accuracy: float

    @property
    def display_name(self) -> str:
        return f"{self.classifier_name}({self.training_label})"


def summarize_run(results: RunResults) -> RunSummary:
    """Mean/CV/min/max over all condition accuracies, plus the clean accuracy.

    The mean is the plain arithmetic mean over every condition of the run;
    the CV is computed over the same values. `accu_clean` is None when the
    run's condition set has no clean condition.
    """
    if not results.rows:
        raise ValueError("cannot summarize a run with no condition results")
    fractions = [row.accuracy for row in results.rows]
    clean_rows = [row for row in results.rows if row.label == CLEAN_LABEL]
    if len(clean_rows) > 1:
        raise ValueError("run has more than one clean condition")
    return RunSummary(
        classifier_name=results.classifier_name,
        training_label=results.training_label,
        cv=cv_percent(fractions),
        mean_accuracy=100.0 * math.fsum(fractions) / len(fractions),
        accu_clean=100.0 * clean_rows[0].accuracy if clean_rows else None,
        min_accuracy=100.0 * min(fractions),
        max_accuracy=100.0 * max(fractions),
    )


class QuadrantGroup(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


def classify_quadrant(ma: float, cv: float, ref_ma: float, ref_cv: float) -> QuadrantGroup:
    """Place a (mean accuracy, CV) point relative to a reference point.

    Group I: MA >= rMA and CV <= rCV (best); II: MA >= rMA and CV > rCV;
    III: MA < rMA and CV <= rCV; IV otherwise. Comparisons are inclusive, so
    the reference point itself lands in Group I.
    """
    if ma >= ref_ma:
        return QuadrantGroup.I if cv <= ref_cv else QuadrantGroup.II
    return QuadrantGroup.III if cv <= ref_cv else QuadrantGroup.IV


class Family(str, Enum):
    CLEAN = "clean"
    SINGLE_FACTOR = "single_factor"
    TWO_FACTOR = "two_factor"


def family_of(training_label: str) -> Family:
    """Perturbation family of a training label by effective factor count."""
    specs = parse_label(training_label)
    if len(specs) == 0:
        return Family.CLEAN
    if len(specs) == 1:
        return Family.SINGLE_FACTOR
    if len(specs) == 2:
        return Family.TWO_FACTOR
    raise ValueError(f"training label {training_label!r} has {len(specs)} factors; families cover at most two")


@dataclass(frozen=True)
class FamilyStats:
    """Unweighted per-family means of the summary statistics."""

    count: int
    cv: float
    mean_accuracy: float
    min_accuracy: float
    max_accuracy: float


def family_aggregate(summaries: Iterable[RunSummary]) -> dict[Family, FamilyStats]:
    """Per-family means of {cv, mean, min, max}; empty families are absent."""
    buckets: dict[Family, list[RunSummary]] = {}
    for summary in summaries:
        buckets.setdefault(family_of(summary.training_label), []).append(summary)
    aggregates: dict[Family, FamilyStats] = {}
    for family, members in buckets.items():
        n = len(members)
        aggregates[family] = FamilyStats(
            count=n,
            cv=math.fsum(s.cv for s in members) / n,
            mean_accuracy=math.fsum(s.mean_accuracy for s in members) / n,
            min_accuracy=math.fsum(s.min_accuracy for s in members) / n,
            max_accuracy=math.fsum(s.max_accuracy for s in members) / n,
        )
    return aggregates


def _average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with ties assigned the fractional (average) rank."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    start = 0
    while start < len(order):
        stop = start
        while stop + 1 < len(order) and values[order[stop + 1]] == values[order[start]]:
            stop += 1
        rank = (start + stop) / 2.0 + 1.0
        for idx in range(start, stop + 1):
            ranks[order[idx]] = rank
        start = stop + 1
    return ranks


def _check_paired(x: Sequence[float], y: Sequence[float]) -> None:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValueError("correlation needs at least two pairs")


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson linear correlation, clipped to [-1, 1] against rounding spill."""
    _check_paired(x, y)
    mean_x = math.fsum(x) / len(x)
    mean_y = math.fsum(y) / len(y)
    cov = math.fsum((a - mean_x) * (b - mean_y) for a, b in zip(x, y))
    var_x = math.fsum((a - mean_x) ** 2 for a in x)
    var_y = math.fsum((b - mean_y) ** 2 for b in y)
    if var_x == 0.0 or var_y == 0.0:
        raise ValueError("pearson correlation undefined for constant input")
    # single root of the product keeps perfectly correlated input at exactly 1
    return max(-1.0, min(1.0, cov / math.sqrt(var_x * var_y)))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank correlation.

    Without ties this is 1 - 6 sum(d^2) / (n (n^2 - 1)) over the rank
    differences d; with ties, fractional ranks are assigned and the Pearson
    formula is applied to the rank vectors.
    """
    _check_paired(x, y)
    n = len(x)
    rank_x = _average_ranks(x)
    rank_y = _average_ranks(y)
    if len(set(x)) == n and len(set(y)) == n:
        d_squared = math.fsum((a - b) ** 2 for a, b in zip(rank_x, rank_y))
        return 1.0 - 6.0 * d_squared / (n * (n * n - 1))
    return pearson(rank_x, rank_y)


def validate_results(results: RunResults, conditions: Mapping[int, str]) -> list[str]:
    """Violations of a run against a manifest's {ordinal: label} conditions.

    Reports missing/unknown ordinals, duplicates, label mismatches, and
    accuracy rows inconsistent with correct/total or outside [0, 1].
    An empty list means the run is valid.
    """
    violations: list[str] = []
    seen: dict[int, ConditionResult] = {}
    for row in results.rows:
        if row.ordinal in seen:
            violations.append(f"duplicate condition ordinal {row.ordinal}")
            continue
        seen[row.ordinal] = row
        expected = conditions.get(row.ordinal)
        if expected is None:
            violations.append(f"unknown condition ordinal {row.ordinal} ({row.label})")
            continue
        if row.label != expected:
            violations.append(f"condition {row.ordinal}: label {row.label!r} does not match manifest {expected!r}")
        if row.total <= 0 or row.correct < 0 or row.correct > row.total:
            violations.append(f"condition {row.ordinal}: invalid counts {row.correct}/{row.total}")
        elif not 0.0 <= row.accuracy <= 1.0 or abs(row.accuracy - row.correct / row.total) > 5e-7:
            violations.append(f"condition {row.ordinal}: accuracy {row.accuracy} inconsistent with {row.correct}/{row.total}")
    for ordinal in sorted(set(conditions) - set(seen)):
        violations.append(f"missing condition {ordinal} ({conditions[ordinal]})")
    return violations
