from __future__ import annotations

import logging
from pathlib import Path

import pytest

from longtail.config import load_settings
from longtail.logging_setup import configure_logging


class TestSettings:
    """Environment-driven settings."""

    def test_defaults(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        """No environment gives no log override and one thread."""
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("LONGTAIL_LOG", raising=False)
        monkeypatch.delenv("LONGTAIL_THREADS", raising=False)
        settings = load_settings()
        assert settings.LONGTAIL_LOG is None
        assert settings.LONGTAIL_THREADS == 1

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Values are read fresh on each call."""
        monkeypatch.setenv("LONGTAIL_LOG", "DEBUG")
        monkeypatch.setenv("LONGTAIL_THREADS", "8")
        settings = load_settings()
        assert settings.LONGTAIL_LOG == "DEBUG"
        assert settings.LONGTAIL_THREADS == 8


class TestConfigureLogging:
    """Root logger setup."""

    @staticmethod
    def _ours() -> list[logging.Handler]:
        return [h for h in logging.getLogger().handlers if getattr(h, "_longtail", False)]

    def test_replaces_handler(self) -> None:
        """Repeated calls keep a single toolkit handler."""
        configure_logging("INFO")
        configure_logging("DEBUG")
        assert len(self._ours()) == 1
        assert logging.getLogger().level == logging.DEBUG

    def test_key_value_format(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Records are written as key=value pairs on stderr."""
        configure_logging("INFO")
        logging.getLogger("longtail.test").info("hello %s", "there")
        err = capsys.readouterr().err
        assert 'logger=longtail.test msg="hello there"' in err
        assert "level=INFO" in err
