from __future__ import annotations

"""COCO annotation ingestion and manifest emission.

Only the fields below are read; every other key (segmentation, area, info,
licenses, ...) is ignored::

    images[].{id, file_name, width, height}
    annotations[].{id, image_id, category_id, bbox, iscrowd}
    categories[].{id, name}
"""

import json
import logging
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from longtail.errors import IntegrityError, ParseError, SchemaError
from longtail.models.dataset import DatasetIndex
from longtail.schemas.coco import Annotation, BBox, ImageRecord, IngestStats

logger = logging.getLogger(__name__)

_SECTIONS = ("images", "annotations", "categories")

# ---------------------------------------------------------------------------
# Raw input rows
# ---------------------------------------------------------------------------


class _RawRow(BaseModel):
    model_config = ConfigDict(extra="ignore", allow_inf_nan=False)


class _RawImage(_RawRow):
    id: int
    file_name: str
    width: int = Field(gt=0)
    height: int = Field(gt=0)


class _RawAnnotation(_RawRow):
    id: int
    image_id: int
    category_id: int
    bbox: tuple[float, float, float, float]
    iscrowd: bool = False


class _RawCategory(_RawRow):
    id: int
    name: str


_RowT = TypeVar("_RowT", bound=_RawRow)


def _rows(doc: dict[str, Any], section: str, model: type[_RowT]) -> list[_RowT]:
    """Validate every entry of *section*, naming the first bad field on failure."""
    entries = doc[section]
    if not isinstance(entries, list):
        raise SchemaError(section, f"Field '{section}' must be an array.")
    rows: list[_RowT] = []
    for i, entry in enumerate(entries):
        try:
            rows.append(model.model_validate(entry))
        except ValidationError as exc:
            first = exc.errors()[0]
            loc = ".".join(str(p) for p in first["loc"])
            field = f"{section}[{i}].{loc}" if loc else f"{section}[{i}]"
            raise SchemaError(field, f"Invalid field '{field}': {first['msg']}.") from exc
    return rows


def _decode(annotation_bytes: bytes) -> dict[str, Any]:
    try:
        text = annotation_bytes.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("Annotation document is not valid UTF-8", exc.start) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"Malformed JSON: {exc.msg}", offset) from exc
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "Annotation document must be a JSON object.")
    for section in _SECTIONS:
        if section not in doc:
            raise SchemaError(section)
    return doc


def _clamp(bbox: tuple[float, float, float, float], width: int, height: int) -> BBox | None:
    """Clamp *bbox* to the image rectangle; ``None`` when nothing is left.

    In-bounds boxes are returned with their original coordinates untouched.
    """
    x, y, w, h = bbox
    if w > 0 and h > 0 and x >= 0 and y >= 0 and x + w <= width and y + h <= height:
        return BBox(x=x, y=y, w=w, h=h)
    clamped = BBox.from_corners(
        max(0.0, x), max(0.0, y), min(float(width), x + w), min(float(height), y + h)
    )
    if clamped.w <= 0 or clamped.h <= 0:
        return None
    return clamped


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def parse_coco(annotation_bytes: bytes) -> DatasetIndex:
    """Parse a COCO annotation document into a :class:`DatasetIndex`.

    Boxes reaching past the image are clamped to it; boxes left with no width
    or height are dropped.  Both events are counted in ``index.ingest`` and
    logged once as a warning.

    Raises:
        ParseError: The bytes are not UTF-8 JSON.
        SchemaError: A required field is missing, mistyped, or duplicated.
        IntegrityError: An annotation references a missing image or category,
            or reuses an annotation id.
    """
    doc = _decode(annotation_bytes)
    raw_images = _rows(doc, "images", _RawImage)
    raw_anns = _rows(doc, "annotations", _RawAnnotation)
    raw_cats = _rows(doc, "categories", _RawCategory)

    categories: dict[int, str] = {}
    for i, cat in enumerate(raw_cats):
        if cat.id in categories:
            raise SchemaError(f"categories[{i}].id", f"Duplicate category id {cat.id}.")
        categories[cat.id] = cat.name

    images: dict[int, ImageRecord] = {}
    for i, img in enumerate(raw_images):
        if img.id in images:
            raise SchemaError(f"images[{i}].id", f"Duplicate image id {img.id}.")
        images[img.id] = ImageRecord(
            id=img.id, file_name=img.file_name, width=img.width, height=img.height
        )

    seen: set[int] = set()
    annotations: list[Annotation] = []
    clamped = dropped = 0
    for raw in raw_anns:
        if raw.id in seen:
            raise IntegrityError(raw.id, "duplicate annotation id.")
        seen.add(raw.id)
        image = images.get(raw.image_id)
        if image is None:
            raise IntegrityError(raw.id, f"image_id {raw.image_id} does not exist.")
        if raw.category_id not in categories:
            raise IntegrityError(raw.id, f"category_id {raw.category_id} does not exist.")

        bbox = _clamp(raw.bbox, image.width, image.height)
        if bbox is None:
            dropped += 1
            continue
        if bbox.to_list() != list(raw.bbox):
            clamped += 1
        annotations.append(
            Annotation(
                id=raw.id,
                image_id=raw.image_id,
                category_id=raw.category_id,
                bbox=bbox,
                iscrowd=raw.iscrowd,
            )
        )

    if clamped or dropped:
        logger.warning(
            "Ingest adjusted out-of-bounds boxes: %d clamped, %d dropped.", clamped, dropped
        )
    index = DatasetIndex.build(
        images.values(),
        annotations,
        categories,
        ingest=IngestStats(clamped_boxes=clamped, dropped_boxes=dropped),
    )
    logger.info(
        "Parsed %d images, %d annotations, %d categories.",
        len(index.images),
        len(index.annotations),
        len(index.categories),
    )
    return index


def manifest_document(index: DatasetIndex) -> dict[str, list[dict[str, Any]]]:
    """Return the COCO-schema dict for *index*, every array ordered by ascending id."""
    return {
        "images": [
            {"id": img.id, "file_name": img.file_name, "width": img.width, "height": img.height}
            for img in (index.images[i] for i in sorted(index.images))
        ],
        "annotations": [
            {
                "id": ann.id,
                "image_id": ann.image_id,
                "category_id": ann.category_id,
                "bbox": ann.bbox.to_list(),
                "iscrowd": int(ann.iscrowd),
            }
            for ann in (index.annotations[a] for a in sorted(index.annotations))
        ],
        "categories": [
            {"id": cid, "name": index.categories[cid]} for cid in sorted(index.categories)
        ],
    }


def write_manifest(index: DatasetIndex) -> bytes:
    """Serialise *index* to a byte-deterministic COCO manifest.

    ``parse_coco(write_manifest(x))`` is structurally equal to ``x``.
    """
    text = json.dumps(manifest_document(index), ensure_ascii=False, separators=(",", ":"))
    return (text + "\n").encode("utf-8")


def load_index(path: Path) -> DatasetIndex:
    """Read and parse the COCO annotation file at *path*."""
    logger.info("Loading annotations from %s", path)
    return parse_coco(Path(path).read_bytes())


def save_manifest(index: DatasetIndex, path: Path) -> Path:
    """Write the manifest for *index* to *path*, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(write_manifest(index))
    logger.info("Manifest written: %s (%d images)", path, len(index.images))
    return path
