"""Long-tailed dataset curation and class-imbalance toolkit for object detection."""

__version__ = "0.1.0"
