"""Deterministic reporting: the four-quadrant mCV scatter plot as SVG text
and run-summary tables in CSV or Markdown.

Rendering is a pure function of its input: fixed element ordering, fixed
4-decimal numeric formatting, no timestamps, so outputs can be golden-tested
byte for byte.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from mcvbench.metrics import RunSummary

WIDTH, HEIGHT = 720, 520
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 30, 30, 60
PLOT_W = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
PLOT_H = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM


@dataclass(frozen=True)
class PlotPoint:
    """One classifier's summary placed on the mCV plane."""

    label: str
    mean_accuracy: float
    cv: float
    min_accuracy: float
    max_accuracy: float
    is_reference: bool = False


@dataclass(frozen=True)
class McvPlotSpec:
    """Input to the mCV plot: X is CV (%), Y is mean accuracy (%).

    Exactly one point must be the reference; its CV and mean accuracy define
    the two partition lines. Ranges are explicit (min, max) pairs or None for
    padded data bounds. With `whiskers` on, each point carries a vertical bar
    spanning its min/max accuracy.
    """

    points: tuple[PlotPoint, ...]
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None
    whiskers: bool = False

    def __post_init__(self) -> None:
        if sum(1 for p in self.points if p.is_reference) != 1:
            raise ValueError("mCV plot needs exactly one reference point")
        for p in self.points:
            values = (p.mean_accuracy, p.cv, p.min_accuracy, p.max_accuracy)
            if not all(math.isfinite(v) for v in values):
                raise ValueError(f"non-finite value in point {p.label!r}")

    @property
    def reference(self) -> PlotPoint:
        return next(p for p in self.points if p.is_reference)


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _resolve_range(explicit: tuple[float, float] | None, values: Sequence[float]) -> tuple[float, float]:
    if explicit is not None:
        lo, hi = float(explicit[0]), float(explicit[1])
        if not hi > lo:
            raise ValueError(f"axis range must have positive span, got ({lo}, {hi})")
        return lo, hi
    lo, hi = min(values), max(values)
    pad = 0.05 * (hi - lo) if hi > lo else 1.0
    return lo - pad, hi + pad


def render_mcv_svg(spec: McvPlotSpec) -> str:
    """Render the four-quadrant mCV plot; byte-deterministic for equal input.

    The reference CV gives a vertical partition line and the reference mean
    accuracy a horizontal one. Group I is the upper-left quadrant (CV at or
    below reference, mean accuracy at or above), II upper-right, III
    lower-left, IV lower-right.
    """
    xs = [p.cv for p in spec.points]
    ys = [p.mean_accuracy for p in spec.points]
    if spec.whiskers:
        ys = ys + [p.min_accuracy for p in spec.points] + [p.max_accuracy for p in spec.points]
    x_lo, x_hi = _resolve_range(spec.x_range, xs)
    y_lo, y_hi = _resolve_range(spec.y_range, ys)

    def px(value: float) -> float:
        return MARGIN_LEFT + (value - x_lo) / (x_hi - x_lo) * PLOT_W

    def py(value: float) -> float:
        return MARGIN_TOP + (y_hi - value) / (y_hi - y_lo) * PLOT_H

    ref = spec.reference
    ref_x, ref_y = px(ref.cv), py(ref.mean_accuracy)

    lines: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{PLOT_W}" height="{PLOT_H}" '
        f'fill="none" stroke="black" stroke-width="1"/>',
    ]

    for i in range(5):
        tick = x_lo + (x_hi - x_lo) * i / 4.0
        x = px(tick)
        lines.append(f'<line x1="{_fmt(x)}" y1="{MARGIN_TOP + PLOT_H}" x2="{_fmt(x)}" y2="{MARGIN_TOP + PLOT_H + 5}" stroke="black"/>')
        lines.append(f'<text x="{_fmt(x)}" y="{MARGIN_TOP + PLOT_H + 18}" text-anchor="middle">{_fmt(tick)}</text>')
    for i in range(5):
        tick = y_lo + (y_hi - y_lo) * i / 4.0
        y = py(tick)
        lines.append(f'<line x1="{MARGIN_LEFT - 5}" y1="{_fmt(y)}" x2="{MARGIN_LEFT}" y2="{_fmt(y)}" stroke="black"/>')
        lines.append(f'<text x="{MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end">{_fmt(tick)}</text>')
    lines.append(
        f'<text x="{MARGIN_LEFT + PLOT_W / 2}" y="{HEIGHT - 15}" text-anchor="middle">coefficient of variation (%)</text>'
    )
    lines.append(
        f'<text x="18" y="{MARGIN_TOP + PLOT_H / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN_TOP + PLOT_H / 2})">mean accuracy (%)</text>'
    )

    lines.append(
        f'<line class="ref-cv" x1="{_fmt(ref_x)}" y1="{MARGIN_TOP}" x2="{_fmt(ref_x)}" '
        f'y2="{MARGIN_TOP + PLOT_H}" stroke="gray" stroke-dasharray="5,4"/>'
    )
    lines.append(
        f'<line class="ref-ma" x1="{MARGIN_LEFT}" y1="{_fmt(ref_y)}" x2="{MARGIN_LEFT + PLOT_W}" '
        f'y2="{_fmt(ref_y)}" stroke="gray" stroke-dasharray="5,4"/>'
    )
    quadrants = (
        ("Group I", MARGIN_LEFT + 8, MARGIN_TOP + 16, "start"),
        ("Group II", MARGIN_LEFT + PLOT_W - 8, MARGIN_TOP + 16, "end"),
        ("Group III", MARGIN_LEFT + 8, MARGIN_TOP + PLOT_H - 8, "start"),
        ("Group IV", MARGIN_LEFT + PLOT_W - 8, MARGIN_TOP + PLOT_H - 8, "end"),
    )
    for name, x, y, anchor in quadrants:
        lines.append(f'<text class="quadrant" x="{x}" y="{y}" text-anchor="{anchor}" fill="gray">{name}</text>')

    if spec.whiskers:
        for p in spec.points:
            x, y_min, y_max = px(p.cv), py(p.min_accuracy), py(p.max_accuracy)
            lines.append(
                f'<line class="whisker" x1="{_fmt(x)}" y1="{_fmt(y_min)}" x2="{_fmt(x)}" '
                f'y2="{_fmt(y_max)}" stroke="#9999cc"/>'
            )
            for y_cap in (y_min, y_max):
                lines.append(
                    f'<line class="whisker-cap" x1="{_fmt(x - 3)}" y1="{_fmt(y_cap)}" '
                    f'x2="{_fmt(x + 3)}" y2="{_fmt(y_cap)}" stroke="#9999cc"/>'
                )

    for p in spec.points:
        x, y = px(p.cv), py(p.mean_accuracy)
        cls = "point reference" if p.is_reference else "point"
        fill = "red" if p.is_reference else "steelblue"
        lines.append(f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{fill}"/>')
        lines.append(f'<text class="point-label" x="{_fmt(x + 6)}" y="{_fmt(y - 6)}">{escape(p.label)}</text>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


TABLE_HEADERS = (
    "classifier(training set)",
    "CV %",
    "mean Accu %",
    "Accu(clean) %",
    "min Accu %",
    "max Accu %",
)


def round2(value: float) -> str:
    """Round half up to two decimals, as printed in the summary tables."""
    return str(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _table_rows(summaries: Iterable[RunSummary]) -> list[list[str]]:
    ordered = sorted(summaries, key=lambda s: (s.classifier_name, s.training_label))
    return [
        [
            s.display_name,
            round2(s.cv),
            round2(s.mean_accuracy),
            round2(s.accu_clean) if s.accu_clean is not None else "",
            round2(s.min_accuracy),
            round2(s.max_accuracy),
        ]
        for s in ordered
    ]


def render_table(summaries: Iterable[RunSummary], format: str = "csv") -> str:
    """Summary table with fixed columns, sorted by (classifier, training label)."""
    rows = _table_rows(summaries)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(TABLE_HEADERS)
        writer.writerows(rows)
        return buf.getvalue()
    if format == "markdown":
        lines = [
            "| " + " | ".join(TABLE_HEADERS) + " |",
            "|" + "|".join(" --- " for _ in TABLE_HEADERS) + "|",
        ]
        lines.extend("| " + " | ".join(row) + " |" for row in rows)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {format!r} (expected 'csv' or 'markdown')")
