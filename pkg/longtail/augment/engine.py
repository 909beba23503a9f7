from __future__ import annotations

"""Batch mosaic / mixup generation.

Sample ``k`` draws all of its randomness from the stream
``(seed, augment_sample, k)``, so samples can be rendered on any number of
threads and still come out identical to a sequential run.  Files are named by
sample index and the provenance manifest is written in index order once all
samples are done.
"""

import json
import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from longtail.augment.io import load_image, save_png, write_yolo_labels
from longtail.augment.mixup import mixup, sample_lambda
from longtail.augment.mosaic import apply_mosaic, plan_mosaic
from longtail.augment.sources import pick_mixup_pair, pick_mosaic_sources
from longtail.errors import DomainError
from longtail.models.dataset import DatasetIndex
from longtail.models.enums import AugmentMode, MixupPairing, SourceMode
from longtail.rng import Stream, stream
from longtail.schemas.augment import AugmentedSample, BiasSpec, MixupSpec

logger = logging.getLogger(__name__)

MANIFEST_NAME = "augment_manifest.jsonl"


class AugmentConfig(BaseModel):
    """Engine parameters, fixed for a whole run."""

    model_config = ConfigDict(frozen=True)

    mode: AugmentMode = AugmentMode.mosaic
    base_size: int = Field(default=320, gt=0)
    mixup: MixupSpec = Field(default_factory=MixupSpec)
    source_mode: SourceMode = SourceMode.uniform
    pairing: MixupPairing = MixupPairing.uniform
    bias: BiasSpec = Field(default_factory=BiasSpec)
    seed: int = Field(default=0, ge=0)
    threads: int = Field(default=1, ge=1)


class AugmentationEngine:
    """Renders augmented samples from a dataset and its image directory.

    Usage::

        engine = AugmentationEngine(index, Path("images"), AugmentConfig(seed=7))
        sample = engine.make_sample(0)
        engine.run(Path("out"), count=100)
    """

    def __init__(self, index: DatasetIndex, image_dir: Path, config: AugmentConfig) -> None:
        if not index.images:
            raise DomainError("Cannot augment an empty dataset.")
        self._index = index
        self._image_dir = Path(image_dir)
        self._config = config
        self._class_index = {cid: i for i, cid in enumerate(sorted(index.categories))}

    @property
    def class_index(self) -> dict[int, int]:
        """``category_id -> YOLO class index`` (ascending category id)."""
        return dict(self._class_index)

    # ------------------------------------------------------------------
    # Sample construction
    # ------------------------------------------------------------------

    def _load(self, image_id: int) -> tuple[np.ndarray, list[Any]]:
        record = self._index.images[image_id]
        pixels = load_image(self._image_dir / record.file_name)
        return pixels, self._index.labels_of(image_id)

    def _mosaic(self, image_ids: Sequence[int], rng: np.random.Generator) -> AugmentedSample:
        records = [self._index.images[i] for i in image_ids]
        layout = plan_mosaic(records, self._config.base_size, rng)
        return apply_mosaic([self._load(i) for i in image_ids], layout)

    def make_sample(self, sample_index: int) -> AugmentedSample:
        """Build sample *sample_index*; a pure function of the config and index."""
        cfg = self._config
        rng = stream(cfg.seed, Stream.augment_sample, sample_index)
        with_mixup = cfg.mode is AugmentMode.mosaic_mixup and rng.random() < cfg.mixup.probability

        if not with_mixup:
            sources = pick_mosaic_sources(self._index, cfg.source_mode, cfg.bias, rng)
            return self._mosaic(sources, rng)

        first_ids, second_ids = pick_mixup_pair(self._index, cfg.pairing, rng, cfg.bias)
        first = self._mosaic(first_ids, rng)
        second = self._mosaic(second_ids, rng)
        return mixup(first, second, sample_lambda(cfg.mixup, rng))

    # ------------------------------------------------------------------
    # Output
    # ------------------------------------------------------------------

    def _render(self, sample_index: int, out_dir: Path) -> dict[str, Any]:
        sample = self.make_sample(sample_index)
        stem = f"{sample_index:06d}"
        width, height = sample.size
        save_png(out_dir / "images" / f"{stem}.png", sample.pixels)
        write_yolo_labels(
            out_dir / "labels" / f"{stem}.txt", sample.labels, width, height, self._class_index
        )
        return {
            "sample": sample_index,
            "image": f"images/{stem}.png",
            "labels_file": f"labels/{stem}.txt",
            "width": width,
            "height": height,
            "source_image_ids": sample.provenance.get("source_image_ids", []),
            "labels": [
                {"category_id": label.category_id, "bbox": label.bbox.to_list()}
                for label in sample.labels
            ],
            "transform": {k: v for k, v in sample.provenance.items() if k != "source_image_ids"},
        }

    def run(self, out_dir: Path, count: int) -> Path:
        """Render *count* samples under *out_dir* and return the manifest path.

        Writes ``images/NNNNNN.png``, ``labels/NNNNNN.txt``, ``classes.txt``
        and :data:`MANIFEST_NAME`.
        """
        out_dir = Path(out_dir)
        (out_dir / "images").mkdir(parents=True, exist_ok=True)
        (out_dir / "labels").mkdir(parents=True, exist_ok=True)

        with ThreadPoolExecutor(max_workers=self._config.threads) as pool:
            records = list(pool.map(lambda k: self._render(k, out_dir), range(count)))

        names = [self._index.categories[cid] for cid in sorted(self._index.categories)]
        (out_dir / "classes.txt").write_text("".join(n + "\n" for n in names), encoding="utf-8")

        manifest = out_dir / MANIFEST_NAME
        with manifest.open("w", encoding="utf-8", newline="\n") as fh:
            for record in records:
                fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
        logger.info(
            "Rendered %d augmented samples (%s) into %s using %d thread(s).",
            count,
            self._config.mode.value,
            out_dir,
            self._config.threads,
        )
        return manifest
