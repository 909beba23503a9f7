from __future__ import annotations

"""Markdown summary of a class histogram and its Zipf fit."""

import logging
from pathlib import Path

from longtail.schemas.stats import ClassHistogram, ZipfFit

logger = logging.getLogger(__name__)


def _md_table(headers: list[str], rows: list[list[str]], align: list[str] | None = None) -> str:
    """Build a Markdown pipe table.

    ``align`` entries: ``"l"`` (left, default), ``"r"`` (right), ``"c"`` (center).
    """
    if align is None:
        align = ["l"] * len(headers)

    sep_map = {"l": ":---", "r": "---:", "c": ":---:"}
    sep = [sep_map.get(a, ":---") for a in align]

    lines = [
        "| " + " | ".join(headers) + " |",
        "| " + " | ".join(sep) + " |",
    ]
    for row in rows:
        escaped = [cell.replace("|", "\\|").replace("\n", " ") for cell in row]
        lines.append("| " + " | ".join(escaped) + " |")

    return "\n".join(lines)


class MarkdownRenderer:
    """Render ``stats.md``."""

    def render(self, hist: ClassHistogram, fit: ZipfFit | None) -> str:
        lines = ["# Dataset statistics", ""]
        lines.append(f"**Categories:** {len(hist.order)}")
        lines.append(f"**Images per class (sum):** {hist.total_images}")
        lines.append("")

        if fit is not None:
            lines.append("## Zipf fit")
            lines.append("")
            lines.append(
                _md_table(
                    ["Statistic", "Value"],
                    [
                        ["s", f"{fit.zipf_s:g}"],
                        ["K", str(fit.k)],
                        ["chi-square", f"{fit.chi_square:.6f}"],
                        ["degrees of freedom", str(fit.dof)],
                        ["L1 deviation", f"{fit.l1:.6f}"],
                    ],
                    ["l", "r"],
                )
            )
            lines.append("")

        lines.append("## Per-class counts")
        lines.append("")
        headers = ["Rank", "Category", "Id", "Images", "Instances"]
        align = ["r", "l", "r", "r", "r"]
        if fit is not None:
            headers.append("Zipf target")
            align.append("r")
        rows = []
        for rank, cid in enumerate(hist.order, start=1):
            row = [
                str(rank),
                hist.name_of(cid),
                str(cid),
                str(hist.per_class_image_count[cid]),
                str(hist.per_class_instance_count[cid]),
            ]
            if fit is not None:
                row.append(f"{fit.expected[rank - 1]:.1f}")
            rows.append(row)
        lines.append(_md_table(headers, rows, align))
        lines.append("")
        return "\n".join(lines)

    def write(self, path: Path, hist: ClassHistogram, fit: ZipfFit | None) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(hist, fit), encoding="utf-8")
        logger.info("Markdown summary written: %s", path)
        return path
