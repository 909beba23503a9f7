from __future__ import annotations

"""Statistics report orchestration.

:class:`ReportGenerator` turns a histogram and an optional Zipf fit into the
report files of the ``stats`` command.  Every file except the workbook is
byte-deterministic for a fixed input.

Typical usage::

    from longtail.reports.generator import ReportGenerator

    paths = ReportGenerator().emit_report(hist, fit, Path("out/stats"))
"""

import json
import logging
from pathlib import Path

from longtail.reports.csv_table import write_csv
from longtail.reports.markdown import MarkdownRenderer
from longtail.reports.svg import SvgRenderer
from longtail.schemas.stats import ClassHistogram, ZipfFit

logger = logging.getLogger(__name__)

STATS_CSV = "stats.csv"
IMAGES_SVG = "images_per_class.svg"
INSTANCES_SVG = "instances_per_class.svg"
FIT_JSON = "fit.json"
STATS_MD = "stats.md"
STATS_XLSX = "stats.xlsx"


class ReportGenerator:
    """Emit the CSV table, both bar charts, the fit JSON and the Markdown summary."""

    def __init__(self) -> None:
        self._svg = SvgRenderer()
        self._markdown = MarkdownRenderer()

    def emit_report(
        self,
        hist: ClassHistogram,
        fit: ZipfFit | None,
        out_dir: Path,
        *,
        xlsx: bool = False,
    ) -> list[Path]:
        """Write the report files under *out_dir* and return their paths.

        ``fit.json`` is only written when *fit* is given.  Bars follow
        ``hist.order``.

        Raises:
            OSError: *out_dir* cannot be created or written.
        """
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = [write_csv(out_dir / STATS_CSV, hist)]

        paths.append(
            self._svg.write_bar_chart(
                out_dir / IMAGES_SVG,
                [(hist.name_of(c), hist.per_class_image_count[c]) for c in hist.order],
                title="Images per class",
                y_label="images",
            )
        )
        paths.append(
            self._svg.write_bar_chart(
                out_dir / INSTANCES_SVG,
                [(hist.name_of(c), hist.per_class_instance_count[c]) for c in hist.order],
                title="Instances per class",
                y_label="instances",
            )
        )

        if fit is not None:
            fit_path = out_dir / FIT_JSON
            fit_path.write_text(
                json.dumps(fit.model_dump(mode="json"), sort_keys=True, indent=2) + "\n",
                encoding="utf-8",
            )
            paths.append(fit_path)

        paths.append(self._markdown.write(out_dir / STATS_MD, hist, fit))

        if xlsx:
            from longtail.reports.excel import ExcelRenderer

            paths.append(ExcelRenderer().generate_excel(hist, fit, out_dir / STATS_XLSX))

        logger.info("Report written to %s (%d files).", out_dir, len(paths))
        return paths
