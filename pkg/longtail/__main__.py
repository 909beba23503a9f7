from __future__ import annotations

from longtail.cli import main

main()
