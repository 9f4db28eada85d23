"""Two-factor image perturbation benchmark toolkit.

Generates seeded, byte-reproducible corpora of corrupted images, ingests
per-condition classifier accuracies, computes robustness statistics
(mean accuracy, coefficient of variation, quadrant groups, correlations),
and renders mCV plots and summary tables.
"""

from mcvbench.grid import Condition, GridConfig, canonical_label, enumerate_conditions, parse_label
from mcvbench.metrics import (
    Family,
    FamilyStats,
    QuadrantGroup,
    RunResults,
    RunSummary,
    classify_quadrant,
    cv_percent,
    family_aggregate,
    family_of,
    pearson,
    pop_stddev,
    spearman,
    summarize_run,
)
from mcvbench.perturb import Image, PerturbationKind, PerturbationSpec, apply_sequence, gaussian_noise, rotate, salt_pepper
from mcvbench.rng import RandomStream, derive_stream

__version__ = "0.1.0"

__all__ = [
    "Condition",
    "Family",
    "FamilyStats",
    "GridConfig",
    "Image",
    "PerturbationKind",
    "PerturbationSpec",
    "QuadrantGroup",
    "RandomStream",
    "RunResults",
    "RunSummary",
    "apply_sequence",
    "canonical_label",
    "classify_quadrant",
    "cv_percent",
    "derive_stream",
    "enumerate_conditions",
    "family_aggregate",
    "family_of",
    "gaussian_noise",
    "parse_label",
    "pearson",
    "pop_stddev",
    "rotate",
    "salt_pepper",
    "spearman",
    "summarize_run",
]
