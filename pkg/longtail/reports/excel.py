from __future__ import annotations

"""Excel export of the statistics, a two-sheet .xlsx workbook."""

import logging
from pathlib import Path

from openpyxl import Workbook
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet

from longtail.schemas.stats import ClassHistogram, ZipfFit

logger = logging.getLogger(__name__)

_HEADER_FONT = Font(bold=True, color="FFFFFF", size=11)
_HEADER_FILL = PatternFill(start_color="2563EB", end_color="2563EB", fill_type="solid")
_WRAP = Alignment(wrap_text=True, vertical="top")


def _auto_width(ws: Worksheet) -> None:
    """Set column widths based on content, capped at 60 characters."""
    for col_idx in range(1, (ws.max_column or 1) + 1):
        max_len = 0
        for row in ws.iter_rows(min_col=col_idx, max_col=col_idx, values_only=True):
            if row[0] is not None:
                max_len = max(max_len, len(str(row[0])))
        ws.column_dimensions[get_column_letter(col_idx)].width = min(max_len + 4, 60)


def _write_header_row(ws: Worksheet, headers: list[str]) -> None:
    for col_idx, header in enumerate(headers, start=1):
        cell = ws.cell(row=1, column=col_idx, value=header)
        cell.font = _HEADER_FONT
        cell.fill = _HEADER_FILL
        cell.alignment = _WRAP


class ExcelRenderer:
    """Write ``stats.xlsx`` with a per-class sheet and a fit sheet."""

    def generate_excel(self, hist: ClassHistogram, fit: ZipfFit | None, output_path: Path) -> Path:
        wb = Workbook()

        ws_counts = wb.active
        assert ws_counts is not None
        ws_counts.title = "Per-class counts"
        self._write_counts(ws_counts, hist)

        if fit is not None:
            self._write_fit(wb.create_sheet("Zipf fit"), fit)

        output_path.parent.mkdir(parents=True, exist_ok=True)
        wb.save(str(output_path))
        logger.info("Excel workbook written: %s", output_path)
        return output_path

    # ------------------------------------------------------------------
    # Sheet writers
    # ------------------------------------------------------------------

    def _write_counts(self, ws: Worksheet, hist: ClassHistogram) -> None:
        _write_header_row(ws, ["Rank", "Category", "Id", "Images", "Instances"])
        for row_idx, cid in enumerate(hist.order, start=2):
            ws.cell(row=row_idx, column=1, value=row_idx - 1)
            ws.cell(row=row_idx, column=2, value=hist.name_of(cid))
            ws.cell(row=row_idx, column=3, value=cid)
            ws.cell(row=row_idx, column=4, value=hist.per_class_image_count[cid])
            ws.cell(row=row_idx, column=5, value=hist.per_class_instance_count[cid])
        _auto_width(ws)

    def _write_fit(self, ws: Worksheet, fit: ZipfFit) -> None:
        _write_header_row(ws, ["Statistic", "Value"])
        rows = [
            ("s", fit.zipf_s),
            ("K", fit.k),
            ("chi-square", fit.chi_square),
            ("degrees of freedom", fit.dof),
            ("L1 deviation", fit.l1),
            ("total", fit.total),
        ]
        for row_idx, (name, value) in enumerate(rows, start=2):
            ws.cell(row=row_idx, column=1, value=name).font = Font(bold=True)
            ws.cell(row=row_idx, column=2, value=value)
        _auto_width(ws)
