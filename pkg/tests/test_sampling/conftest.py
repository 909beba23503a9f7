from __future__ import annotations

import pytest

from longtail.coco.parser import parse_coco
from longtail.fixtures.synthetic import synthetic_coco
from longtail.models.dataset import DatasetIndex
from tests.helpers import to_bytes


@pytest.fixture(scope="module")
def synthetic_200() -> DatasetIndex:
    """The 200-image dataset used for repeat-factor expectation checks."""
    return parse_coco(to_bytes(synthetic_coco(200, 8, seed=17)))
