from __future__ import annotations

import functools
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from longtail.schemas.coco import Annotation, ImageRecord, IngestStats, Label


@dataclass(frozen=True)
class DatasetIndex:
    """Validated, read-only in-memory model of a COCO-style dataset.

    Build instances through :meth:`build` (or :func:`longtail.coco.parser.parse_coco`)
    so that ``ImageRecord.annotation_ids`` and :attr:`images_by_category` are
    derived from the annotations rather than trusted from input.

    Crowd annotations stay in :attr:`annotations` and in each image's
    ``annotation_ids`` but never appear in :attr:`images_by_category` or in
    any frequency count.

    Attributes:
        images:             ``image_id -> ImageRecord``.
        annotations:        ``annotation_id -> Annotation``.
        categories:         ``category_id -> name``.
        images_by_category: ``category_id -> ascending image ids`` holding at
                            least one non-crowd instance of that category.
        ingest:             Clamping counters from parsing; not part of
                            structural equality.
    """

    images: Mapping[int, ImageRecord]
    annotations: Mapping[int, Annotation]
    categories: Mapping[int, str]
    images_by_category: Mapping[int, tuple[int, ...]]
    ingest: IngestStats = field(default_factory=IngestStats, compare=False)

    @classmethod
    def build(
        cls,
        images: Iterable[ImageRecord],
        annotations: Iterable[Annotation],
        categories: Mapping[int, str],
        ingest: IngestStats | None = None,
    ) -> DatasetIndex:
        """Assemble an index, deriving every per-image and per-category listing.

        References are assumed to resolve; the parser checks them before
        calling this.
        """
        anns = sorted(annotations, key=lambda a: a.id)
        ann_ids_by_image: dict[int, list[int]] = defaultdict(list)
        image_sets: dict[int, set[int]] = {cid: set() for cid in categories}
        for ann in anns:
            ann_ids_by_image[ann.image_id].append(ann.id)
            if not ann.iscrowd:
                image_sets.setdefault(ann.category_id, set()).add(ann.image_id)

        image_map = {
            img.id: img.model_copy(update={"annotation_ids": tuple(ann_ids_by_image.get(img.id, ()))})
            for img in sorted(images, key=lambda i: i.id)
        }
        return cls(
            images=MappingProxyType(image_map),
            annotations=MappingProxyType({a.id: a for a in anns}),
            categories=MappingProxyType(dict(sorted(categories.items()))),
            images_by_category=MappingProxyType(
                {cid: tuple(sorted(ids)) for cid, ids in sorted(image_sets.items())}
            ),
            ingest=ingest or IngestStats(),
        )

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------

    @functools.cached_property
    def image_ids(self) -> tuple[int, ...]:
        """All image ids, ascending."""
        return tuple(sorted(self.images))

    @functools.cached_property
    def _categories_by_image(self) -> dict[int, tuple[int, ...]]:
        found: dict[int, set[int]] = defaultdict(set)
        for ann in self.annotations.values():
            if not ann.iscrowd:
                found[ann.image_id].add(ann.category_id)
        return {iid: tuple(sorted(found.get(iid, ()))) for iid in self.images}

    def categories_of(self, image_id: int) -> tuple[int, ...]:
        """Distinct non-crowd category ids present in *image_id*, ascending."""
        return self._categories_by_image.get(image_id, ())

    def annotations_of(self, image_id: int) -> list[Annotation]:
        """Every annotation on *image_id*, crowd included, by ascending id."""
        return [self.annotations[aid] for aid in self.images[image_id].annotation_ids]

    def labels_of(self, image_id: int) -> list[Label]:
        """Non-crowd ``(category_id, bbox)`` labels of *image_id*."""
        return [Label(a.category_id, a.bbox) for a in self.annotations_of(image_id) if not a.iscrowd]

    def annotation_count(self, image_id: int) -> int:
        """Number of annotations on *image_id*, crowd included."""
        return len(self.images[image_id].annotation_ids)

    def image_counts(self) -> dict[int, int]:
        """``category_id -> number of images`` containing it (non-crowd)."""
        return {cid: len(ids) for cid, ids in self.images_by_category.items()}

    def instance_counts(self) -> dict[int, int]:
        """``category_id -> number of non-crowd instances``."""
        counts = dict.fromkeys(self.categories, 0)
        for ann in self.annotations.values():
            if not ann.iscrowd:
                counts[ann.category_id] = counts.get(ann.category_id, 0) + 1
        return counts

    # ------------------------------------------------------------------
    # Derivation
    # ------------------------------------------------------------------

    def subset(
        self,
        image_ids: Iterable[int],
        *,
        keep_annotation: Callable[[Annotation], bool] | None = None,
        categories: Iterable[int] | None = None,
    ) -> DatasetIndex:
        """Return a new index restricted to *image_ids*.

        Args:
            image_ids: Images to keep; ids absent from this index are ignored.
            keep_annotation: Optional predicate; annotations failing it are
                dropped from the kept images.
            categories: Optional category ids to keep in the category map.
                Annotations of other categories must already be excluded by
                *keep_annotation*.
        """
        wanted = {iid for iid in image_ids if iid in self.images}
        anns = [
            a
            for a in self.annotations.values()
            if a.image_id in wanted and (keep_annotation is None or keep_annotation(a))
        ]
        if categories is None:
            cats = dict(self.categories)
        else:
            keep = set(categories)
            cats = {cid: name for cid, name in self.categories.items() if cid in keep}
        return DatasetIndex.build(
            (self.images[iid] for iid in wanted), anns, cats, ingest=self.ingest
        )
