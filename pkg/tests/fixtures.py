"""Shared test fixture data and synthetic-run construction helpers.

BENCH_ROWS is the bundled 27-run summary fixture (three classifiers, each
trained under nine conditions) that drives the aggregate, correlation, and
reporting oracles. Values are percentages: (classifier, training label, CV,
mean accuracy, clean accuracy, min accuracy, max accuracy).
"""

from __future__ import annotations

import math

from mcvbench.grid import CLEAN_LABEL, Condition
from mcvbench.metrics import ConditionResult, RunResults

BENCH_ROWS = (
    ("AlexNet", "clean", 2.28, 85.25, 92.08, 83.18, 92.08),
    ("AlexNet", "GA0.1", 1.50, 89.60, 90.9, 87.22, 91.7),
    ("AlexNet", "GA0.1SP0.1", 1.33, 89.75, 90.82, 87.62, 91.42),
    ("AlexNet", "RL30", 3.33, 85.75, 90.72, 82.12, 91.42),
    ("AlexNet", "RR30", 3.07, 86.33, 90.74, 82.64, 91.7),
    ("AlexNet", "SP0.1", 1.33, 89.44, 90.78, 86.68, 91.18),
    ("AlexNet", "SP0.1GA0.1", 1.04, 89.67, 91.3, 87.96, 91.38),
    ("AlexNet", "SP0.1RL30", 1.92, 88.39, 89.96, 85.3, 91.6),
    ("AlexNet", "SP0.1RR30", 1.56, 88.79, 90.52, 85.98, 91.36),
    ("ResNet50", "clean", 2.56, 88.56, 91.18, 85.46, 91.5),
    ("ResNet50", "GA0.1", 0.22, 81.98, 82.4, 81.68, 82.4),
    ("ResNet50", "GA0.1SP0.1", 0.37, 82.17, 82.56, 81.6, 82.64),
    ("ResNet50", "RL30", 2.50, 84.83, 83.8, 83.12, 89.48),
    ("ResNet50", "RR30", 2.62, 85.20, 83.68, 83.2, 90.0),
    ("ResNet50", "SP0.1", 0.29, 82.27, 82.86, 82.0, 82.86),
    ("ResNet50", "SP0.1GA0.1", 0.12, 81.97, 81.9, 81.72, 82.18),
    ("ResNet50", "SP0.1RL30", 1.85, 84.66, 84.16, 82.86, 88.04),
    ("ResNet50", "SP0.1RR30", 2.62, 83.54, 82.34, 81.68, 88.22),
    ("VGG-19", "clean", 3.98, 91.13, 94.92, 86.38, 94.92),
    ("VGG-19", "GA0.1", 2.81, 89.78, 92.48, 85.22, 92.48),
    ("VGG-19", "GA0.1SP0.1", 1.83, 91.18, 92.82, 88.94, 92.94),
    ("VGG-19", "RL30", 1.51, 89.94, 90.32, 87.26, 92.9),
    ("VGG-19", "RR30", 1.36, 89.34, 90.04, 86.96, 91.6),
    ("VGG-19", "SP0.1", 1.37, 90.72, 92.28, 88.96, 92.36),
    ("VGG-19", "SP0.1GA0.1", 2.07, 89.77, 92.16, 87.06, 92.16),
    ("VGG-19", "SP0.1RL30", 1.04, 90.08, 90.48, 87.78, 91.92),
    ("VGG-19", "SP0.1RR30", 1.24, 88.30, 88.72, 86.1, 90.92),
)

ALEXNET_ROWS = tuple(r for r in BENCH_ROWS if r[0] == "AlexNet")

_QUANTUM = 10**8


def engineer_accuracies(
    conditions: tuple[Condition, ...],
    cv: float,
    mean: float,
    accu_clean: float,
    min_v: float,
    max_v: float,
) -> list[ConditionResult]:
    """Per-condition accuracies whose summary reproduces the given moments.

    Holds the clean condition at `accu_clean` and dedicates one condition
    each to the min and max; the remaining conditions take two solved levels
    so that the full vector hits the target mean and population stddev
    (cv * mean / 100). All values stay within [min_v, max_v].
    """
    n = len(conditions)
    if n < 4:
        raise ValueError("need at least four conditions to engineer moments")
    if not (min_v <= accu_clean <= max_v and min_v <= mean <= max_v):
        raise ValueError("targets must satisfy min <= clean, mean <= max")
    clean_conditions = [c for c in conditions if c.label == CLEAN_LABEL]
    if len(clean_conditions) != 1:
        raise ValueError("condition set must contain exactly one clean condition")
    clean_ordinal = clean_conditions[0].ordinal
    others = [c for c in conditions if c.ordinal != clean_ordinal]
    min_holder, max_holder = others[0].ordinal, others[1].ordinal
    free = [c.ordinal for c in others[2:]]

    sigma = cv * mean / 100.0
    fixed = {clean_ordinal: accu_clean, min_holder: min_v, max_holder: max_v}
    # deviations about the target mean
    sum_free = n * mean - math.fsum(fixed.values()) - len(free) * mean
    dev_budget = n * sigma**2 - math.fsum((v - mean) ** 2 for v in fixed.values())
    if dev_budget < -1e-9:
        raise ValueError("fixed values already exceed the variance budget")
    lo, hi = min_v - mean, max_v - mean

    m = len(free)
    solution = None
    for k in sorted(range(1, m), key=lambda j: abs(j - m // 2)):
        q = m - k
        # k values at alpha, q at beta: quadratic in beta from the two moment equations
        a = q * m
        b = -2.0 * sum_free * q
        c = sum_free**2 - k * dev_budget
        disc = b * b - 4.0 * a * c
        if disc < 0:
            continue
        for root in ((-b + math.sqrt(disc)) / (2 * a), (-b - math.sqrt(disc)) / (2 * a)):
            beta = root
            alpha = (sum_free - q * beta) / k
            if lo - 1e-9 <= min(alpha, beta) and max(alpha, beta) <= hi + 1e-9:
                solution = (k, min(max(alpha, lo), hi), min(max(beta, lo), hi))
                break
        if solution:
            break
    if solution is None:
        raise ValueError(f"no feasible two-level fill for cv={cv} mean={mean} on n={n}")
    k, alpha, beta = solution

    values = dict(fixed)
    for idx, ordinal in enumerate(free):
        values[ordinal] = mean + (alpha if idx < k else beta)

    rows = []
    for condition in conditions:
        correct = round(values[condition.ordinal] / 100.0 * _QUANTUM)
        rows.append(
            ConditionResult(
                ordinal=condition.ordinal,
                label=condition.label,
                correct=correct,
                total=_QUANTUM,
                accuracy=correct / _QUANTUM,
            )
        )
    return rows


def engineered_run(
    conditions: tuple[Condition, ...],
    classifier: str,
    training_label: str,
    cv: float,
    mean: float,
    accu_clean: float,
    min_v: float,
    max_v: float,
    manifest_digest: str | None = None,
) -> RunResults:
    rows = engineer_accuracies(conditions, cv, mean, accu_clean, min_v, max_v)
    return RunResults(
        classifier_name=classifier,
        training_label=training_label,
        rows=tuple(rows),
        manifest_digest=manifest_digest,
    )
