from __future__ import annotations

"""Self-contained SVG bar charts rendered from a Jinja2 template."""

import logging
from collections.abc import Sequence
from pathlib import Path

import jinja2

logger = logging.getLogger(__name__)

_TEMPLATES_DIR = Path(__file__).parent / "templates"

WIDTH = 800
HEIGHT = 500
_MARGIN = {"left": 70, "right": 20, "top": 40, "bottom": 120}


def _fmt(value: float) -> str:
    return f"{value:.2f}"


class SvgRenderer:
    """Render ``(label, value)`` series as fixed-size bar charts.

    Bars keep the order they are given in; coordinates are printed with two
    decimals so the output is byte-stable.
    """

    def __init__(self, templates_dir: Path = _TEMPLATES_DIR) -> None:
        self._env = jinja2.Environment(
            loader=jinja2.FileSystemLoader(str(templates_dir)),
            autoescape=jinja2.select_autoescape(["svg", "svg.j2"], default_for_string=True),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=jinja2.StrictUndefined,
        )

    def render_bar_chart(
        self,
        series: Sequence[tuple[str, int]],
        *,
        title: str,
        y_label: str,
    ) -> str:
        plot = {
            "left": _MARGIN["left"],
            "right": WIDTH - _MARGIN["right"],
            "top": _MARGIN["top"],
            "bottom": HEIGHT - _MARGIN["bottom"],
        }
        plot_w = plot["right"] - plot["left"]
        plot_h = plot["bottom"] - plot["top"]
        max_value = max((value for _, value in series), default=0)

        bars = []
        if series:
            slot = plot_w / len(series)
            gap = slot * 0.15
            for i, (name, value) in enumerate(series):
                height = plot_h * value / max_value if max_value else 0.0
                x = plot["left"] + i * slot + gap / 2
                bars.append(
                    {
                        "name": name,
                        "value": value,
                        "x": _fmt(x),
                        "y": _fmt(plot["bottom"] - height),
                        "width": _fmt(slot - gap),
                        "height": _fmt(height),
                        "label_x": _fmt(x + (slot - gap) / 2),
                    }
                )

        template = self._env.get_template("bar_chart.svg.j2")
        return template.render(
            width=WIDTH,
            height=HEIGHT,
            title=title,
            y_label=y_label,
            plot=plot,
            max_value=max_value,
            bars=bars,
        )

    def write_bar_chart(
        self,
        path: Path,
        series: Sequence[tuple[str, int]],
        *,
        title: str,
        y_label: str,
    ) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            self.render_bar_chart(series, title=title, y_label=y_label), encoding="utf-8"
        )
        logger.info("SVG chart written: %s", path)
        return path
