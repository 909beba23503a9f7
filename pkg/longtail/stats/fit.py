from __future__ import annotations

import logging
import math

from longtail.errors import DomainError
from longtail.schemas.curation import ZipfSpec
from longtail.schemas.stats import ClassHistogram, ZipfFit

logger = logging.getLogger(__name__)

MIN_EXPECTED = 5.0


def _pooled_bins(observed: list[int], expected: list[float]) -> list[tuple[float, float]]:
    # Expected counts are non-increasing along rank, so the small bins are
    # the tail; fold them into one and, if that is still small, into the
    # last large bin.
    bins = [(float(o), e) for o, e in zip(observed, expected, strict=True) if e >= MIN_EXPECTED]
    tail_o = math.fsum(float(o) for o, e in zip(observed, expected, strict=True) if e < MIN_EXPECTED)
    tail_e = math.fsum(e for e in expected if e < MIN_EXPECTED)
    if tail_e > 0.0 or tail_o > 0.0:
        if tail_e >= MIN_EXPECTED or not bins:
            bins.append((tail_o, tail_e))
        else:
            last_o, last_e = bins.pop()
            bins.append((last_o + tail_o, last_e + tail_e))
    return bins


def zipf_fit(hist: ClassHistogram, spec: ZipfSpec) -> ZipfFit:
    """Compare the histogram's image counts, in rank order, with *spec*.

    Both statistics are 0 exactly when the observed shares equal the Zipf
    probabilities.  An all-zero histogram has shares of 0, giving ``l1 = 1``
    and ``chi_square = 0``.

    Raises:
        DomainError: The histogram's category count differs from ``spec.k``.
    """
    if len(hist.order) != spec.k:
        raise DomainError(
            f"Histogram has {len(hist.order)} categories but the Zipf law has {spec.k} ranks."
        )
    observed = [hist.per_class_image_count[cid] for cid in hist.order]
    total = sum(observed)
    expected = [p * total for p in spec.probabilities]

    shares = [o / total if total else 0.0 for o in observed]
    l1 = math.fsum(abs(q - p) for q, p in zip(shares, spec.probabilities, strict=True))

    bins = _pooled_bins(observed, expected)
    chi_square = math.fsum((o - e) ** 2 / e for o, e in bins if e > 0.0)
    dof = max(0, len(bins) - 1)

    logger.info("Zipf fit (s=%s, K=%d): chi2=%.6g dof=%d L1=%.6g", spec.s, spec.k, chi_square, dof, l1)
    return ZipfFit(
        zipf_s=spec.s,
        k=spec.k,
        chi_square=chi_square,
        l1=l1,
        dof=dof,
        total=total,
        observed=tuple(observed),
        expected=tuple(expected),
    )
