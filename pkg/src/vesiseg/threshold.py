"""Histograms, threshold selection, binarization and tone inversion.

Black (0) pixels of a :class:`BinaryImage` are the foreground that gets
labeled downstream; a pixel turns black when its brightness is ``<= tau``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import GrayImage

__all__ = [
    "DegenerateHistogramError",
    "Histogram",
    "ThresholdConfig",
    "BinaryImage",
    "histogram",
    "binarize",
    "invert",
    "auto_threshold_shannon",
    "auto_threshold_tsallis",
    "select_threshold",
]

MODES = ("manual", "shannon", "tsallis")


class DegenerateHistogramError(ValueError):
    """No two-class split exists (fewer than two occupied grey levels)."""


@dataclass(frozen=True, eq=False)
class Histogram:
    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (256,):
            raise ValueError(f"histogram needs 256 bins, got shape {counts.shape}")
        if (counts < 0).any():
            raise ValueError("histogram counts must be non-negative")
        counts = counts.copy()
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __eq__(self, other):
        return isinstance(other, Histogram) and np.array_equal(self.counts, other.counts)


@dataclass(frozen=True)
class ThresholdConfig:
    mode: str = "shannon"
    tau: int | None = None
    q: float | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown threshold mode {self.mode!r}; expected one of {MODES}")
        if self.mode == "manual":
            if self.tau is None or not 0 <= self.tau <= 255:
                raise ValueError(f"manual mode needs tau in [0, 255], got {self.tau}")
        if self.mode == "tsallis":
            _check_q(self.q)


class BinaryImage(GrayImage):
    """Grey image restricted to the two values 0 (black) and 255 (white)."""

    def __post_init__(self):
        super().__post_init__()
        d = self.data
        if not np.all((d == 0) | (d == 255)):
            raise ValueError("BinaryImage values must be exactly 0 or 255")

    @property
    def black_count(self) -> int:
        return int(np.count_nonzero(self.data == 0))


def _check_q(q):
    if q is None or not q > 0 or q == 1:
        raise ValueError(f"Tsallis index q must be > 0 and != 1, got {q}")


def histogram(img: GrayImage) -> Histogram:
    return Histogram(np.bincount(img.data.ravel(), minlength=256))


def binarize(img: GrayImage, tau: int) -> BinaryImage:
    """Clip at ``tau``: values ``<= tau`` become 0, the rest 255."""
    if not 0 <= tau <= 255:
        raise ValueError(f"tau must lie in [0, 255], got {tau}")
    return BinaryImage(np.where(img.data <= tau, 0, 255).astype(np.uint8))


def invert(img: BinaryImage) -> BinaryImage:
    return BinaryImage(255 - img.data)


def _class_probabilities(hist: Histogram):
    """Per-split normalized class probabilities.

    Returns ``(below, above, valid)`` where row ``t`` of ``below`` holds
    ``p_v / P0(t)`` for ``v <= t`` (zero elsewhere), ``above`` the analogous
    quantity for ``v > t``, and ``valid[t]`` flags splits with both classes
    non-empty. Rows cover ``t = 0 .. 254``.
    """
    total = hist.total
    if total < 1:
        raise DegenerateHistogramError("histogram is empty")
    if np.count_nonzero(hist.counts) < 2:
        raise DegenerateHistogramError(
            "histogram has fewer than two occupied grey levels; no split exists"
        )
    p = hist.counts / total
    taus = np.arange(255)[:, None]
    v = np.arange(256)[None, :]
    lower = v <= taus
    p_below = np.where(lower, p, 0.0)
    p_above = np.where(lower, 0.0, p)
    mass_below = p_below.sum(axis=1)
    mass_above = p_above.sum(axis=1)
    valid = (hist.counts.cumsum()[:255] > 0) & (hist.counts.cumsum()[:255] < total)
    with np.errstate(divide="ignore", invalid="ignore"):
        below = np.where(valid[:, None], p_below / mass_below[:, None], 0.0)
        above = np.where(valid[:, None], p_above / mass_above[:, None], 0.0)
    return below, above, valid


def _first_argmax(objective: np.ndarray, valid: np.ndarray) -> int:
    best_tau, best = -1, -np.inf
    for tau in np.flatnonzero(valid):
        if objective[tau] > best:
            best_tau, best = int(tau), objective[tau]
    return best_tau


def auto_threshold_shannon(hist: Histogram) -> int:
    """Maximum sum of the two class entropies (Kapur's criterion).

    Scans every split ``tau`` in ``[0, 254]``; the smallest maximizer wins.
    """
    below, above, valid = _class_probabilities(hist)
    with np.errstate(divide="ignore", invalid="ignore"):
        h_below = -np.where(below > 0, below * np.log(below), 0.0).sum(axis=1)
        h_above = -np.where(above > 0, above * np.log(above), 0.0).sum(axis=1)
    return _first_argmax(h_below + h_above, valid)


def auto_threshold_tsallis(hist: Histogram, q: float) -> int:
    """Maximum pseudo-additive Tsallis entropy of the two classes.

    ``S_A + S_B + (1 - q) S_A S_B`` with ``S = (1 - sum p^q) / (q - 1)``;
    tends to the Shannon criterion as ``q -> 1``.
    """
    _check_q(q)
    below, above, valid = _class_probabilities(hist)
    with np.errstate(divide="ignore", invalid="ignore"):
        s_below = (1.0 - np.where(below > 0, below**q, 0.0).sum(axis=1)) / (q - 1.0)
        s_above = (1.0 - np.where(above > 0, above**q, 0.0).sum(axis=1)) / (q - 1.0)
    return _first_argmax(s_below + s_above + (1.0 - q) * s_below * s_above, valid)


def select_threshold(hist: Histogram, config: ThresholdConfig) -> int:
    if config.mode == "manual":
        return int(config.tau)
    if config.mode == "shannon":
        return auto_threshold_shannon(hist)
    return auto_threshold_tsallis(hist, config.q)
