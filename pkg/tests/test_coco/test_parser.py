from __future__ import annotations

import json

import pytest

from longtail.coco.parser import parse_coco
from longtail.errors import IntegrityError, ParseError, SchemaError
from longtail.schemas.coco import BBox
from tests.helpers import coco_doc, to_bytes

# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _single_image_doc(bbox: list[float], width: int = 100, height: int = 100) -> dict:
    """Return a document with one image, one class-1 box and one category."""
    return coco_doc([(1, width, height)], [(1, 1, 1, bbox)], {1: "person"})


# ---------------------------------------------------------------------------
# Tests
# ---------------------------------------------------------------------------


class TestParseCoco:
    """Well-formed documents become a consistent DatasetIndex."""

    def test_single_annotation_document(self) -> None:
        """One 640x480 image with one box yields one entry in every map."""
        doc = coco_doc([(7, 640, 480)], [(3, 7, 1, [10, 10, 50, 50])], {1: "person"})
        index = parse_coco(to_bytes(doc))
        assert len(index.images) == 1
        assert len(index.annotations) == 1
        assert index.images_by_category[1] == (7,)
        assert index.images[7].annotation_ids == (3,)
        assert index.annotations[3].bbox == BBox(x=10, y=10, w=50, h=50)

    def test_empty_annotations(self) -> None:
        """No annotations gives empty per-category image lists."""
        doc = coco_doc([(1, 10, 10)], [], {1: "a", 2: "b"})
        index = parse_coco(to_bytes(doc))
        assert dict(index.images_by_category) == {1: (), 2: ()}
        assert index.images[1].annotation_ids == ()

    def test_images_by_category_sorted_and_unique(self) -> None:
        """Image lists are ascending and list each image once per category."""
        doc = coco_doc(
            [(5, 50, 50), (2, 50, 50), (9, 50, 50)],
            [
                (1, 9, 1, [0, 0, 5, 5]),
                (2, 2, 1, [0, 0, 5, 5]),
                (3, 9, 1, [10, 10, 5, 5]),
                (4, 5, 2, [0, 0, 5, 5]),
            ],
            [1, 2],
        )
        index = parse_coco(to_bytes(doc))
        assert index.images_by_category[1] == (2, 9)
        assert index.images_by_category[2] == (5,)

    def test_float_coordinates_preserved(self) -> None:
        """Float boxes keep their exact double values."""
        index = parse_coco(to_bytes(_single_image_doc([10.25, 3.5, 7.125, 9.75])))
        assert index.annotations[1].bbox.to_list() == [10.25, 3.5, 7.125, 9.75]

    def test_extra_keys_ignored(self) -> None:
        """Segmentation, area and top-level extras do not affect parsing."""
        doc = _single_image_doc([1, 1, 5, 5])
        doc["annotations"][0]["segmentation"] = [[1, 1, 2, 2, 3, 3]]
        doc["annotations"][0]["area"] = 25
        doc["info"] = {"year": 2017}
        index = parse_coco(to_bytes(doc))
        assert len(index.annotations) == 1

    def test_order_insensitive(self) -> None:
        """Permuting the annotation array gives a structurally equal index."""
        anns = [(i, 1 + i % 3, 1 + i % 2, [i, i, 5, 5]) for i in range(1, 10)]
        images = [(1, 60, 60), (2, 60, 60), (3, 60, 60)]
        forward = parse_coco(to_bytes(coco_doc(images, anns, [1, 2])))
        backward = parse_coco(to_bytes(coco_doc(images, list(reversed(anns)), [1, 2])))
        assert forward == backward


class TestParseCocoErrors:
    """Malformed or inconsistent documents raise typed errors."""

    def test_dangling_image_reference(self) -> None:
        """An annotation pointing at a missing image names the annotation."""
        doc = coco_doc([(1, 10, 10)], [(42, 99, 1, [0, 0, 5, 5])], [1])
        with pytest.raises(IntegrityError) as exc_info:
            parse_coco(to_bytes(doc))
        assert exc_info.value.annotation_id == 42

    def test_dangling_category_reference(self) -> None:
        """An annotation pointing at a missing category is an integrity error."""
        doc = coco_doc([(1, 10, 10)], [(8, 1, 5, [0, 0, 5, 5])], [1])
        with pytest.raises(IntegrityError) as exc_info:
            parse_coco(to_bytes(doc))
        assert exc_info.value.annotation_id == 8

    def test_duplicate_annotation_id(self) -> None:
        """Reusing an annotation id is an integrity error."""
        doc = coco_doc([(1, 10, 10)], [(1, 1, 1, [0, 0, 5, 5]), (1, 1, 1, [1, 1, 5, 5])], [1])
        with pytest.raises(IntegrityError):
            parse_coco(to_bytes(doc))

    def test_duplicate_image_id(self) -> None:
        """Reusing an image id is a schema error naming the field."""
        doc = coco_doc([(1, 10, 10), (1, 20, 20)], [], [1])
        with pytest.raises(SchemaError) as exc_info:
            parse_coco(to_bytes(doc))
        assert exc_info.value.field == "images[1].id"

    def test_missing_section(self) -> None:
        """A document without ``categories`` names the missing field."""
        data = json.dumps({"images": [], "annotations": []}).encode()
        with pytest.raises(SchemaError) as exc_info:
            parse_coco(data)
        assert exc_info.value.field == "categories"

    def test_missing_bbox(self) -> None:
        """A missing bbox is reported with its array position."""
        doc = _single_image_doc([0, 0, 5, 5])
        del doc["annotations"][0]["bbox"]
        with pytest.raises(SchemaError) as exc_info:
            parse_coco(to_bytes(doc))
        assert exc_info.value.field == "annotations[0].bbox"

    def test_non_positive_image_size(self) -> None:
        """Images need a positive width."""
        doc = coco_doc([(1, 0, 10)], [], [1])
        with pytest.raises(SchemaError) as exc_info:
            parse_coco(to_bytes(doc))
        assert exc_info.value.field == "images[0].width"

    def test_malformed_json_byte_offset(self) -> None:
        """Trailing garbage is reported at its byte offset, counting UTF-8 bytes."""
        good = json.dumps(coco_doc([], [], {1: "café"}), ensure_ascii=False).encode("utf-8")
        with pytest.raises(ParseError) as exc_info:
            parse_coco(good + b"x")
        assert exc_info.value.offset == len(good)

    def test_invalid_utf8(self) -> None:
        """Bytes that are not UTF-8 are a parse error."""
        with pytest.raises(ParseError):
            parse_coco(b'{"images": "\xff"}')

    def test_root_must_be_object(self) -> None:
        """A JSON array is not a COCO document."""
        with pytest.raises(SchemaError):
            parse_coco(b"[]")


class TestIngestPolicies:
    """Clamping and crowd handling on ingest."""

    def test_out_of_bounds_box_clamped(self) -> None:
        """A box poking past the left edge is clamped and counted."""
        index = parse_coco(to_bytes(_single_image_doc([-5, 10, 20, 20])))
        assert index.annotations[1].bbox == BBox(x=0, y=10, w=15, h=20)
        assert index.ingest.clamped_boxes == 1
        assert index.ingest.dropped_boxes == 0

    def test_box_outside_image_dropped(self) -> None:
        """A box with nothing inside the image is dropped and counted."""
        index = parse_coco(to_bytes(_single_image_doc([200, 200, 10, 10])))
        assert len(index.annotations) == 0
        assert index.ingest.dropped_boxes == 1
        assert index.images_by_category[1] == ()

    def test_in_bounds_box_untouched(self) -> None:
        """Boxes inside the image are not counted as clamped."""
        index = parse_coco(to_bytes(_single_image_doc([0, 0, 100, 100])))
        assert index.ingest.clamped_boxes == 0
        assert index.annotations[1].bbox.to_list() == [0, 0, 100, 100]

    def test_crowd_retained_but_not_counted(self) -> None:
        """Crowd boxes stay on the image but not in category lists or counts."""
        doc = coco_doc(
            [(1, 50, 50), (2, 50, 50)],
            [(1, 1, 1, [0, 0, 5, 5], 1), (2, 2, 1, [0, 0, 5, 5])],
            [1],
        )
        index = parse_coco(to_bytes(doc))
        assert index.images[1].annotation_ids == (1,)
        assert index.annotations[1].iscrowd is True
        assert index.images_by_category[1] == (2,)
        assert index.instance_counts() == {1: 1}
        assert index.labels_of(1) == []
