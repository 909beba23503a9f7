from __future__ import annotations

import numpy as np

from longtail.errors import DomainError
from longtail.schemas.augment import AugmentedSample, MixupSpec


def sample_lambda(spec: MixupSpec, rng: np.random.Generator) -> float:
    """Draw ``lambda ~ Beta(alpha, alpha)``.

    Computed as ``X / (X + Y)`` with ``X, Y ~ Gamma(alpha, 1)`` drawn in that
    order from *rng*, so the stream is reproducible across implementations.
    When *spec* fixes ``lam`` it is returned without consuming draws.

    Raises:
        DomainError: ``alpha`` is not positive.
    """
    if spec.lam is not None:
        return spec.lam
    if not spec.alpha > 0:
        raise DomainError(f"Mixup alpha must be positive, got {spec.alpha}.")
    x = float(rng.standard_gamma(spec.alpha))
    y = float(rng.standard_gamma(spec.alpha))
    if x + y == 0.0:
        return 0.5
    return x / (x + y)


def mixup(a: AugmentedSample, b: AugmentedSample, lam: float) -> AugmentedSample:
    """Blend two samples pixel-wise; labels are concatenated untouched.

    ``pixels = round(lam * a + (1 - lam) * b)`` per channel, halves to even.

    Raises:
        DomainError: The buffers differ in shape or *lam* is outside [0, 1].
    """
    if a.pixels.shape != b.pixels.shape:
        raise DomainError(f"Cannot mix buffers of shapes {a.pixels.shape} and {b.pixels.shape}.")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"Mixing coefficient must lie in [0, 1], got {lam}.")
    blended = lam * a.pixels.astype(np.float64) + (1.0 - lam) * b.pixels.astype(np.float64)
    pixels = np.clip(np.rint(blended), 0, 255).astype(np.uint8)
    provenance = {
        "source_image_ids": list(a.provenance.get("source_image_ids", []))
        + list(b.provenance.get("source_image_ids", [])),
        "mixup": {"lambda": lam, "first": a.provenance, "second": b.provenance},
    }
    return AugmentedSample(pixels=pixels, labels=a.labels + b.labels, provenance=provenance)
