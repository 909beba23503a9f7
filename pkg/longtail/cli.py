from __future__ import annotations

"""Command-line entry point.

Subcommands: ``curate``, ``sample``, ``weights``, ``augment``, ``stats`` and
the hidden ``fixture``.  Every invocation resolves its flags into a
:class:`~longtail.schemas.run.RunConfig` before any work starts, writes a
``run_meta.json`` beside its outputs, and returns one of the exit codes
below.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from longtail import __version__
from longtail.augment.engine import AugmentationEngine, AugmentConfig
from longtail.augment.sources import default_rare_categories
from longtail.coco.parser import load_index, save_manifest
from longtail.config import load_settings
from longtail.curation.pipeline import curate, curate_validation
from longtail.curation.zipf import zipf_targets
from longtail.errors import DataError, UsageError
from longtail.fixtures.synthetic import write_fixture
from longtail.logging_setup import configure_logging
from longtail.models.enums import (
    AugmentMode,
    MixupPairing,
    RepeatAggregation,
    SamplingStrategy,
    SourceMode,
)
from longtail.reports.generator import ReportGenerator
from longtail.reweigh.weights import class_weights, write_weights
from longtail.rng import RNG_ALGORITHM
from longtail.sampling.repeat_factor import repeat_factors
from longtail.sampling.schedules import build_schedules
from longtail.sampling.writer import write_repeat_factors, write_schedules
from longtail.schemas.augment import BiasSpec, MixupSpec
from longtail.schemas.run import (
    AugmentOptions,
    CommandOptions,
    CurateOptions,
    FixtureOptions,
    RunConfig,
    SampleOptions,
    StatsOptions,
    WeightsOptions,
)
from longtail.stats.fit import zipf_fit
from longtail.stats.histogram import histogram

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_IO = 4

RUN_META = "run_meta.json"
SCHEDULE_FILE = "schedule.jsonl"
REPEAT_FACTORS_FILE = "repeat_factors.json"

_STRATEGIES = {
    "uniform": SamplingStrategy.uniform,
    "cas": SamplingStrategy.class_aware,
    "rfs": SamplingStrategy.repeat_factor,
}
_BIAS = {"none": SourceMode.uniform, "underrep": SourceMode.underrep_biased}
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _shared_flags(suppress: bool) -> argparse.ArgumentParser:
    # Subcommand copies must not overwrite values given before the subcommand.
    default = argparse.SUPPRESS if suppress else None
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=default, help="u64 seed (default 0)")
    shared.add_argument(
        "--log-level",
        type=str.upper,
        choices=_LOG_LEVELS,
        default=default,
        help="log level (default INFO; LONGTAIL_LOG overrides)",
    )
    shared.add_argument(
        "--threads", type=int, default=default, help="worker cap (default LONGTAIL_THREADS or 1)"
    )
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="longtail",
        description="Long-tailed detection dataset curation, sampling and augmentation.",
        parents=[_shared_flags(suppress=False)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="{curate,sample,weights,augment,stats}"
    )
    shared = [_shared_flags(suppress=True)]

    p = sub.add_parser("curate", parents=shared, help="build a long-tailed subset")
    p.add_argument("--annotations", type=Path, required=True)
    p.add_argument("--top-k", type=int, default=10)
    p.add_argument("--max-detections", type=int, default=10)
    p.add_argument("--zipf-s", type=float, default=1.01)
    p.add_argument("--out", type=Path, required=True, help="curated manifest path")
    p.add_argument("--report", type=Path, required=True, help="curation report path")
    p.add_argument("--val-annotations", type=Path, default=None)
    p.add_argument("--val-out", type=Path, default=None)

    p = sub.add_parser("sample", parents=shared, help="write per-epoch sampling schedules")
    p.add_argument("--annotations", type=Path, required=True)
    p.add_argument("--strategy", choices=sorted(_STRATEGIES), default="uniform")
    p.add_argument("--t", type=float, default=1.0, help="repeat-factor threshold")
    p.add_argument("--agg", choices=[a.value for a in RepeatAggregation], default="max")
    p.add_argument("--epochs", type=int, default=1)
    p.add_argument("--length", type=int, default=None, help="class-aware epoch length")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("weights", parents=shared, help="write per-class loss weights")
    p.add_argument("--annotations", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("augment", parents=shared, help="render mosaic / mixup samples")
    p.add_argument("--annotations", type=Path, required=True)
    p.add_argument("--images", type=Path, required=True, help="source image directory")
    p.add_argument("--mode", choices=[m.value for m in AugmentMode], default="mosaic")
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--size", type=int, default=320, help="mosaic base size S")
    p.add_argument("--mixup-prob", type=float, default=0.3)
    p.add_argument("--alpha", type=float, default=32.0)
    p.add_argument("--lam", type=float, default=None, help="fixed mixup coefficient")
    p.add_argument("--bias", choices=sorted(_BIAS), default="none")
    p.add_argument("--rare-categories", type=str, default=None, help="comma-separated ids")
    p.add_argument("--bias-prob", type=float, default=0.5)
    p.add_argument(
        "--mixup-pairing", choices=[m.value for m in MixupPairing], default="uniform"
    )
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("stats", parents=shared, help="histograms, Zipf fit and charts")
    p.add_argument("--annotations", type=Path, required=True)
    p.add_argument("--zipf-s", type=float, default=1.01)
    p.add_argument("--xlsx", action="store_true", help="also write stats.xlsx")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("fixture", parents=shared)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--images", type=int, default=200)
    p.add_argument("--categories", type=int, default=10)

    return parser


def _options(args: argparse.Namespace) -> CommandOptions:
    if args.command == "curate":
        return CurateOptions(
            annotations=args.annotations,
            out=args.out,
            report=args.report,
            top_k=args.top_k,
            max_detections=args.max_detections,
            zipf_s=args.zipf_s,
            val_annotations=args.val_annotations,
            val_out=args.val_out,
        )
    if args.command == "sample":
        return SampleOptions(
            annotations=args.annotations,
            out=args.out,
            strategy=_STRATEGIES[args.strategy],
            t=args.t,
            aggregation=RepeatAggregation(args.agg),
            epochs=args.epochs,
            length=args.length,
        )
    if args.command == "weights":
        return WeightsOptions(annotations=args.annotations, out=args.out)
    if args.command == "augment":
        return AugmentOptions(
            annotations=args.annotations,
            images=args.images,
            out=args.out,
            mode=AugmentMode(args.mode),
            count=args.count,
            base_size=args.size,
            mixup_prob=args.mixup_prob,
            alpha=args.alpha,
            lam=args.lam,
            source_mode=_BIAS[args.bias],
            pairing=MixupPairing(args.mixup_pairing),
            rare_categories=args.rare_categories,
            bias_prob=args.bias_prob,
        )
    if args.command == "stats":
        return StatsOptions(
            annotations=args.annotations, out=args.out, zipf_s=args.zipf_s, xlsx=args.xlsx
        )
    if args.command == "fixture":
        return FixtureOptions(out=args.out, images=args.images, categories=args.categories)
    raise UsageError(f"Unknown command {args.command!r}.")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags with settings; ``LONGTAIL_LOG`` wins over ``--log-level``."""
    settings = load_settings()
    log_level = settings.LONGTAIL_LOG or args.log_level or "INFO"
    threads = args.threads if args.threads is not None else settings.LONGTAIL_THREADS
    return RunConfig(
        command=args.command,
        seed=args.seed if args.seed is not None else 0,
        log_level=log_level.upper(),
        threads=threads,
        options=_options(args),
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _write_json(path: Path, doc: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def _run_curate(cfg: RunConfig, opts: CurateOptions) -> Path:
    result = curate(
        load_index(opts.annotations),
        top_k=opts.top_k,
        max_detections=opts.max_detections,
        zipf_s=opts.zipf_s,
        seed=cfg.seed,
    )
    save_manifest(result.index, opts.out)
    _write_json(opts.report, result.report.model_dump(mode="json"))
    if opts.val_annotations is not None and opts.val_out is not None:
        val = curate_validation(load_index(opts.val_annotations), result.keep, opts.max_detections)
        save_manifest(val, opts.val_out)
    return opts.out.parent


def _run_sample(cfg: RunConfig, opts: SampleOptions) -> Path:
    index = load_index(opts.annotations)
    table = None
    if opts.strategy is SamplingStrategy.repeat_factor:
        table = repeat_factors(index, opts.t, opts.aggregation)
        write_repeat_factors(opts.out / REPEAT_FACTORS_FILE, table)
    schedules = build_schedules(
        index,
        opts.strategy,
        opts.epochs,
        cfg.seed,
        t=opts.t,
        aggregation=opts.aggregation,
        length=opts.length,
        table=table,
    )
    write_schedules(opts.out / SCHEDULE_FILE, schedules)
    return opts.out


def _run_weights(cfg: RunConfig, opts: WeightsOptions) -> Path:
    write_weights(opts.out, class_weights(load_index(opts.annotations)))
    return opts.out.parent


def _run_augment(cfg: RunConfig, opts: AugmentOptions) -> Path:
    index = load_index(opts.annotations)
    needs_rare = (
        opts.source_mode is SourceMode.underrep_biased or opts.pairing is MixupPairing.rare_second
    )
    rare: tuple[int, ...] = ()
    if needs_rare:
        rare = opts.rare_categories or default_rare_categories(index)
        logger.info("Rare categories for biased sources: %s", list(rare))
    if (
        opts.mode is AugmentMode.mosaic_mixup
        and opts.source_mode is SourceMode.underrep_biased
        and opts.pairing is MixupPairing.uniform
    ):
        logger.warning(
            "Source bias applies to mosaic picks only; mixup pairs are drawn uniformly. "
            "Pass --mixup-pairing rare_second to bias the second mosaic of each pair."
        )
    config = AugmentConfig(
        mode=opts.mode,
        base_size=opts.base_size,
        mixup=MixupSpec(alpha=opts.alpha, lam=opts.lam, probability=opts.mixup_prob),
        source_mode=opts.source_mode,
        pairing=opts.pairing,
        bias=BiasSpec(rare_categories=rare, probability=opts.bias_prob),
        seed=cfg.seed,
        threads=cfg.threads,
    )
    AugmentationEngine(index, opts.images, config).run(opts.out, opts.count)
    return opts.out


def _run_stats(cfg: RunConfig, opts: StatsOptions) -> Path:
    hist = histogram(load_index(opts.annotations))
    fit = None
    if hist.order:
        fit = zipf_fit(hist, zipf_targets(opts.zipf_s, len(hist.order)))
    else:
        logger.warning("No categories in %s; skipping the Zipf fit.", opts.annotations)
    ReportGenerator().emit_report(hist, fit, opts.out, xlsx=opts.xlsx)
    return opts.out


def _run_fixture(cfg: RunConfig, opts: FixtureOptions) -> Path:
    write_fixture(opts.out, opts.images, opts.categories, cfg.seed)
    return opts.out


_COMMANDS: dict[str, Callable[[RunConfig, Any], Path]] = {
    "curate": _run_curate,
    "sample": _run_sample,
    "weights": _run_weights,
    "augment": _run_augment,
    "stats": _run_stats,
    "fixture": _run_fixture,
}


def write_run_meta(out_dir: Path, cfg: RunConfig) -> Path:
    """Record the resolved configuration beside a command's outputs."""
    return _write_json(
        out_dir / RUN_META,
        {
            "command": cfg.command,
            "config": cfg.model_dump(mode="json"),
            "seed": cfg.seed,
            "tool_version": __version__,
            "rng_algorithm": RNG_ALGORITHM,
        },
    )


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def run(argv: Sequence[str] | None = None) -> int:
    """Execute one command and return its exit code.

    ``0`` success, ``2`` usage error, ``3`` data or integrity error,
    ``4`` I/O error.  Failures print one line on standard error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        cfg = resolve_config(args)
    except (ValidationError, UsageError) as exc:
        print(f"longtail: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(cfg.log_level)
    logger.debug("Resolved configuration: %s", cfg.model_dump(mode="json"))
    try:
        out_dir = _COMMANDS[cfg.command](cfg, cfg.options)
        write_run_meta(out_dir, cfg)
    except DataError as exc:
        print(f"longtail: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except UsageError as exc:
        print(f"longtail: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"longtail: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())
