from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from pathlib import Path

from longtail.schemas.sampling import RepeatFactorTable, SamplingSchedule

logger = logging.getLogger(__name__)


def write_schedules(path: Path, schedules: Iterable[SamplingSchedule]) -> Path:
    """Write one ``{"epoch": e, "image_ids": [...]}`` JSON object per line."""
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for schedule in schedules:
            fh.write(json.dumps(schedule.to_line(), separators=(",", ":")) + "\n")
            count += 1
    logger.info("Wrote %d epoch schedules to %s", count, path)
    return path


def write_repeat_factors(path: Path, table: RepeatFactorTable) -> Path:
    """Dump *table* as JSON with ids ascending."""
    doc = {
        "t": table.t,
        "aggregation": table.aggregation.value,
        "category_frequency": {str(k): table.category_frequency[k] for k in sorted(table.category_frequency)},
        "category_repeat": {str(k): table.category_repeat[k] for k in sorted(table.category_repeat)},
        "image_repeat": {str(k): table.image_repeat[k] for k in sorted(table.image_repeat)},
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return path
