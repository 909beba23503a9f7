from __future__ import annotations

from pathlib import Path

import pytest

from longtail.coco.parser import parse_coco
from longtail.fixtures.synthetic import synthetic_coco, write_fixture
from longtail.models.dataset import DatasetIndex
from tests.helpers import make_index, to_bytes

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def tiny_index() -> DatasetIndex:
    """One 640x480 image with a single class-1 box."""
    return make_index([(1, 640, 480)], [(1, 1, 1, [10, 10, 50, 50])], {1: "person"})


@pytest.fixture()
def small_index() -> DatasetIndex:
    """Four images over three categories, with co-occurrence and one crowd box."""
    return make_index(
        [(1, 100, 80), (2, 120, 90), (3, 64, 64), (4, 50, 50)],
        [
            (1, 1, 1, [0, 0, 30, 30]),
            (2, 1, 2, [40, 10, 20, 30]),
            (3, 2, 1, [5, 5, 50, 40]),
            (4, 2, 1, [60, 20, 30, 30]),
            (5, 3, 3, [10, 10, 20, 20]),
            (6, 3, 2, [30, 30, 10, 10], 1),
        ],
        {1: "person", 2: "car", 3: "dog"},
    )


@pytest.fixture(scope="session")
def synthetic_index() -> DatasetIndex:
    """A 300-image, 10-category procedurally generated dataset."""
    return parse_coco(to_bytes(synthetic_coco(300, 10, seed=11)))


@pytest.fixture()
def fixture_dir(tmp_path: Path) -> Path:
    """A small on-disk dataset: ``annotations.json`` plus ``images/``."""
    write_fixture(tmp_path / "data", images=24, categories=4, seed=3)
    return tmp_path / "data"
