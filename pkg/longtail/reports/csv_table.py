from __future__ import annotations

import csv
import io
import logging
from pathlib import Path

from longtail.schemas.stats import ClassHistogram

logger = logging.getLogger(__name__)

CSV_HEADER = ("category", "image_count", "instance_count")


def render_csv(hist: ClassHistogram) -> str:
    """One row per category in rank order, ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cid in hist.order:
        writer.writerow(
            (
                hist.name_of(cid),
                hist.per_class_image_count[cid],
                hist.per_class_instance_count[cid],
            )
        )
    return buffer.getvalue()


def write_csv(path: Path, hist: ClassHistogram) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(hist), encoding="utf-8", newline="")
    logger.info("CSV table written: %s", path)
    return path
