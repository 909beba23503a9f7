from longtail.reports.csv_table import CSV_HEADER, render_csv, write_csv
from longtail.reports.generator import ReportGenerator
from longtail.reports.markdown import MarkdownRenderer
from longtail.reports.svg import SvgRenderer

__all__ = ["CSV_HEADER", "MarkdownRenderer", "ReportGenerator", "SvgRenderer", "render_csv", "write_csv"]
