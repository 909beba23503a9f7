from longtail.coco.parser import load_index, parse_coco, save_manifest, write_manifest
from longtail.coco.validator import Violation, validate

__all__ = ["Violation", "load_index", "parse_coco", "save_manifest", "validate", "write_manifest"]
