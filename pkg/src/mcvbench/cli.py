"""Command-line entry point: generate, analyze, report, correlate.

Exit codes are a stable scripting contract: 0 success, 2 usage or input
error, 3 results that fail validation against the manifest.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from mcvbench.corpus import CorpusInputError, generate_corpus, load_manifest
from mcvbench.grid import GridConfig
from mcvbench.metrics import (
    RunSummary,
    classify_quadrant,
    family_aggregate,
    family_of,
    pearson,
    spearman,
    summarize_run,
    validate_results,
)
from mcvbench.report import McvPlotSpec, PlotPoint, render_mcv_svg, render_table
from mcvbench.results import ResultsFormatError, read_results

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3

CORRELATION_PAIRINGS = (
    ("CV & mean Accu(all images)", "cv", "mean_accuracy"),
    ("CV & Accu(clean images)", "cv", "accu_clean"),
    ("mean Accu(all images) & Accu(clean images)", "mean_accuracy", "accu_clean"),
)


def _default_seed() -> int:
    return int(os.environ.get("MCVBENCH_SEED", "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcvbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a perturbed corpus and its manifest")
    gen.add_argument("--corpus", required=True, type=Path, help="directory of source PNG images")
    gen.add_argument("--out", required=True, type=Path, help="output directory")
    gen.add_argument("--seed", type=int, default=None, help="master seed (falls back to MCVBENCH_SEED, then 0)")
    gen.add_argument("--sp-levels", type=float, nargs="+", default=None, help="salt & pepper densities")
    gen.add_argument("--ga-levels", type=float, nargs="+", default=None, help="gaussian variances")
    gen.add_argument("--ro-levels", type=float, nargs="+", default=None, help="rotation degrees")
    gen.add_argument("--workers", type=int, default=1, help="parallel workers (output is identical for any count)")

    ana = sub.add_parser("analyze", help="summarize results files against a manifest")
    ana.add_argument("--manifest", required=True, type=Path)
    ana.add_argument("--results", required=True, type=Path, nargs="+", help="results CSV files (with .meta.json sidecars)")
    ana.add_argument("--reference", required=True, help='reference run, e.g. "AlexNet(clean)"')
    ana.add_argument("--out", type=Path, default=Path("analysis.json"), help="analysis JSON output path")

    rep = sub.add_parser("report", help="render the mCV plot and summary table from an analysis file")
    rep.add_argument("--summaries", required=True, type=Path, help="analysis JSON written by analyze")
    rep.add_argument("--out-plot", required=True, type=Path, help="SVG output path")
    rep.add_argument("--out-table", required=True, type=Path, help="Markdown table output path")
    rep.add_argument("--whiskers", action="store_true", help="draw min/max accuracy whiskers")

    cor = sub.add_parser("correlate", help="print rank/linear correlations between summary columns")
    cor.add_argument("--summaries", required=True, type=Path, help="analysis JSON written by analyze")
    return parser


def _grid_config(args: argparse.Namespace) -> GridConfig:
    defaults = GridConfig()
    return GridConfig(
        sp_levels=tuple(args.sp_levels) if args.sp_levels is not None else defaults.sp_levels,
        ga_levels=tuple(args.ga_levels) if args.ga_levels is not None else defaults.ga_levels,
        ro_levels=tuple(args.ro_levels) if args.ro_levels is not None else defaults.ro_levels,
    )


def cmd_generate(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        config = _grid_config(args)
        manifest = generate_corpus(args.corpus, args.out, config, seed, workers=args.workers)
    except (CorpusInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"{len(manifest.conditions)} conditions, {len(manifest.conditions) * manifest.image_count} images")
    print(f"digest {manifest.digest}")
    return EXIT_OK


def _summary_record(summary: RunSummary, quadrant: str | None, family: str | None) -> dict:
    return {
        "classifier_name": summary.classifier_name,
        "training_label": summary.training_label,
        "display": summary.display_name,
        "cv": summary.cv,
        "mean_accuracy": summary.mean_accuracy,
        "accu_clean": summary.accu_clean,
        "min_accuracy": summary.min_accuracy,
        "max_accuracy": summary.max_accuracy,
        "quadrant": quadrant,
        "family": family,
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        manifest = load_manifest(args.manifest)
    except CorpusInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    conditions = manifest.conditions_by_ordinal()

    runs = []
    for path in args.results:
        try:
            results = read_results(path)
        except (ResultsFormatError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        violations = validate_results(results, conditions)
        if results.manifest_digest != manifest.digest:
            violations.insert(0, f"manifest digest mismatch: results carry {results.manifest_digest}")
        if violations:
            print(f"error: {path} fails validation:", file=sys.stderr)
            for violation in violations:
                print(f"  {violation}", file=sys.stderr)
            return EXIT_VALIDATION
        runs.append(results)

    summaries = [summarize_run(r) for r in runs]
    by_display = {s.display_name: s for s in summaries}
    reference = by_display.get(args.reference)
    if reference is None:
        known = ", ".join(sorted(by_display))
        print(f"error: reference {args.reference!r} not among loaded runs ({known})", file=sys.stderr)
        return EXIT_INPUT

    records = []
    for summary in summaries:
        quadrant = classify_quadrant(summary.mean_accuracy, summary.cv, reference.mean_accuracy, reference.cv)
        try:
            family: str | None = family_of(summary.training_label).value
        except ValueError:
            family = None
        records.append(_summary_record(summary, quadrant.value, family))

    aggregates = family_aggregate([s for s in summaries if _parses(s.training_label)])
    doc = {
        "reference": args.reference,
        "summaries": records,
        "family_aggregates": {
            family.value: {
                "count": stats.count,
                "cv": stats.cv,
                "mean_accuracy": stats.mean_accuracy,
                "min_accuracy": stats.min_accuracy,
                "max_accuracy": stats.max_accuracy,
            }
            for family, stats in sorted(aggregates.items(), key=lambda kv: kv[0].value)
        },
    }
    args.out.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {args.out} ({len(records)} runs, reference {args.reference})")
    return EXIT_OK


def _parses(label: str) -> bool:
    try:
        family_of(label)
        return True
    except ValueError:
        return False


def _load_summaries(path: Path) -> tuple[str | None, list[dict]]:
    doc = json.loads(path.read_text(encoding="utf-8"))
    if isinstance(doc, dict) and "summaries" in doc:
        return doc.get("reference"), list(doc["summaries"])
    raise ValueError(f"{path} is not an analysis file (missing 'summaries')")


def cmd_report(args: argparse.Namespace) -> int:
    try:
        reference, records = _load_summaries(args.summaries)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    summaries = [
        RunSummary(
            classifier_name=r["classifier_name"],
            training_label=r["training_label"],
            cv=r["cv"],
            mean_accuracy=r["mean_accuracy"],
            accu_clean=r.get("accu_clean"),
            min_accuracy=r["min_accuracy"],
            max_accuracy=r["max_accuracy"],
        )
        for r in records
    ]
    args.out_table.write_text(render_table(summaries, "markdown"), encoding="utf-8")
    print(f"wrote {args.out_table}")
    points = tuple(
        PlotPoint(
            label=s.display_name,
            mean_accuracy=s.mean_accuracy,
            cv=s.cv,
            min_accuracy=s.min_accuracy,
            max_accuracy=s.max_accuracy,
            is_reference=s.display_name == reference,
        )
        for s in summaries
    )
    try:
        svg = render_mcv_svg(McvPlotSpec(points=points, whiskers=args.whiskers))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args.out_plot.write_text(svg, encoding="utf-8")
    print(f"wrote {args.out_plot}")
    return EXIT_OK


def cmd_correlate(args: argparse.Namespace) -> int:
    try:
        _, records = _load_summaries(args.summaries)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if len(records) < 2:
        print("error: correlate needs at least 2 summaries", file=sys.stderr)
        return EXIT_INPUT
    for name, x_key, y_key in CORRELATION_PAIRINGS:
        try:
            x = [float(r[x_key]) for r in records]
            y = [float(r[y_key]) for r in records]
        except (KeyError, TypeError):
            print(f"{name}: unavailable (missing values)")
            continue
        print(f"{name}: spearman={_coefficient(spearman, x, y)} pearson={_coefficient(pearson, x, y)}")
    return EXIT_OK


def _coefficient(fn, x: list[float], y: list[float]) -> str:
    # constant columns leave the coefficient undefined; report, don't crash
    try:
        return f"{fn(x, y):.4f}"
    except ValueError:
        return "undefined"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "generate": cmd_generate,
        "analyze": cmd_analyze,
        "report": cmd_report,
        "correlate": cmd_correlate,
    }
    return handlers[args.command](args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
