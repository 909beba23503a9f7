from longtail.fixtures.synthetic import render_image, synthetic_coco, write_fixture

__all__ = ["render_image", "synthetic_coco", "write_fixture"]
